#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "divcdcr/wikidata.hpp"

namespace divcdcr {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1;  // findings at/above fail level, or threshold unmet
inline constexpr int kExitUsage = 2;     // usage, I/O or parse error

struct CliContext {
  // Used for live Wikidata requests; an HTTPS transport when null.
  std::shared_ptr<wikidata::Transport> transport;
};

// Runs one invocation. args excludes the program name. Payload goes to out,
// diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliContext& context = {});

}  // namespace divcdcr
