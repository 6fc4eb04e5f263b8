#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "inlsc/run.hpp"

namespace inlsc {

/// Flags of a config file (TOML or INI): entry `key` in section `[sec]` becomes "--sec.key=value",
/// one flag per value for arrays. Keys also present in `overrides` are dropped.
std::vector<std::string> config_file_flags(const std::string& path, const std::vector<std::string>& overrides);

struct ParsedCli {
    RunConfig config;
    int exit_code = -1;  // >= 0: stop with this code (help, parse error)
};

/// Parses --config PATH, --jobs N, --out DIR and every --section.key=value override.
/// Command-line values take precedence over the config file.
ParsedCli parse_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// parse_cli followed by run(); returns the process exit code.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace inlsc
