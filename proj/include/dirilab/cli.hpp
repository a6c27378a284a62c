#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace dirilab {

using json = nlohmann::json;

struct CommandOutput {
    json report;
    // file name -> content, written together into the output directory
    std::vector<std::pair<std::string, std::string>> files;
    bool pass = true;
};

const std::vector<std::string>& command_names();

// Runs one subcommand on a parsed config. A seed given here overrides the config's "seed".
CommandOutput run_command(const std::string& command, const json& config, std::optional<std::uint64_t> seed = {});

// Exit codes: 0 all verdicts pass, 2 some verdict fails, 1 input or computation error.
int cli_main(int argc, char** argv);

} // namespace dirilab
