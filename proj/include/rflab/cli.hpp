#pragma once

namespace rflab {

// Full command-line surface of the rf-lab tool (subcommands: build, model,
// rf, sweep, rank, validate, qfi).  Returns the process exit code:
//   0  success
//   2  usage error (bad flags, malformed files, mismatched dimensions)
//   3  engine incompatibility (e.g. dense engine asked to run per-shot
//      random Clifford gates)
//   4  resource cap exceeded (statevector or trainer width)
int run_cli(int argc, const char* const* argv);

}  // namespace rflab
