#pragma once

namespace aapdhg {

// Full command-line front end. Returns the process exit code:
// 0 solved to tolerance, 2 iteration/time budget exhausted, 1 input error.
int run(int argc, const char* const* argv);

}  // namespace aapdhg
