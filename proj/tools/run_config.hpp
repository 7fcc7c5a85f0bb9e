#pragma once

#include <string>
#include <utility>
#include <vector>

namespace spikesr::cli {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Reads a flat config file: either a JSON object of scalars or key=value
/// lines ('#' starts a comment). Throws Error(Parse).
KeyValues load_config(const std::string& path);

/// Rebuilds argv so config entries come right after the subcommand and
/// before the user's own flags; with last-wins options the flags take
/// precedence. Removes --config from the result.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

}  // namespace spikesr::cli
