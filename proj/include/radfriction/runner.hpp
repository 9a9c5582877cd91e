#ifndef RADFRICTION_RUNNER_HPP
#define RADFRICTION_RUNNER_HPP

#include <string>

#include "radfriction/config.hpp"

namespace radfriction {

// Exit status convention: 0 all checks pass, 1 a physics check failed,
// 2 usage or config error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_physics_fail = 1;
inline constexpr int exit_usage = 2;

// Commands: rate | shift | force-analytic | simulate | sweep | converge.
// Writes deterministic CSV outputs and a key=value summary into out_dir.
int run_command(const std::string& command, const RunConfig& config, const std::string& out_dir);

} // namespace radfriction

#endif
