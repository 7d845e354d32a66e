#pragma once

#include <string>
#include <vector>

namespace rht::corpus {

// A named example document shipped with the tool. `check_args` is a CLI
// invocation whose JSON output must contain the `expected` fragment
// (recursive subset match); the test suite replays every entry.
struct CorpusEntry {
    std::string key;
    std::string title;
    std::string text;
    std::vector<std::string> check_args;
    std::string expected;
};

const std::vector<CorpusEntry>& entries();
const CorpusEntry* find(const std::string& key);

} // namespace rht::corpus
