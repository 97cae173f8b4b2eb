#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "nlmp/bisim.hpp"
#include "nlmp/io.hpp"
#include "nlmp/logic.hpp"

namespace nlmp::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_invalid_model = 2,
    exit_invariant = 3,
    exit_unsatisfied = 4,
    exit_equivalent = 5,
    exit_unsupported = 6,
};

struct CommandResult {
    int exit_code = exit_ok;
    nlohmann::json report;
};

/// The key holding wall-clock time; the rest of a report is deterministic.
inline constexpr const char* timing_key = "timing_ms";

CommandResult cmd_validate(const std::string& path);

/// kind is one of traditional, state, event, all.
CommandResult cmd_bisim(const std::string& path, const std::string& kind);

CommandResult cmd_check(const std::string& path, const std::string& formula, const std::optional<std::string>& state);

CommandResult cmd_distinguish(const std::string& path, const std::string& s, const std::string& t);

/// fragment is L or Lf.
CommandResult cmd_equiv(const std::string& path, const std::string& fragment);

nlohmann::json partition_json(const Universe& u, const Partition& p);

/// Report without the timing field, dumped with two-space indentation.
std::string stable_dump(const nlohmann::json& report);

}  // namespace nlmp::cli
