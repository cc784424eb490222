#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace conespline::cli {

enum ExitCode : int
{
    exit_ok = 0,
    exit_io_error = 1,
    exit_usage = 2,
};

/// Entry point behind the `conespline` executable. `args` excludes the
/// program name. Reports go to `out`, diagnostics and usage text to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace conespline::cli
