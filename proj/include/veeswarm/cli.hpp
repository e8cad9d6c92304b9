#pragma once

#include <iosfwd>

namespace veeswarm {

/// Entry point of the `veeswarm` command line tool:
///   run     --scenario <path> --out <dir> [--seed N] [--override key=value]...
///   sweep   --scenarios <dir> --out <dir> [--jobs K]
///   metrics --trajectory <csv> --scenario <path> --out <csv>
/// When --out is omitted, run and sweep fall back to $VEE_SWARM_OUT.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace veeswarm
