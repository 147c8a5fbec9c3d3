#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace twistorkit {

enum ExitCode : int { kPass = 0, kFail = 1, kParseError = 2, kInvalidObject = 3, kExtractionFailure = 4 };

/// Flags shared by every subcommand. Reports go to `out`; with out_dir set they
/// are also written to out_dir/report.json next to any per-item artifacts.
struct CommonOptions {
    std::string out_dir;
    bool timings = false;  ///< timings make reports run-dependent, so they are opt-in
};

struct KroneckerOptions {
    std::vector<std::string> inputs;
};

struct AcmVerifyOptions {
    std::vector<std::string> inputs;
    std::uint64_t seed = 1;  ///< picks the fibers
    std::size_t fibers = 5;
};

struct AcmRandomOptions {
    int r = 2;
    std::size_t count = 1;
    std::uint64_t seed = 1;
};

struct RationalOptions {
    std::optional<int> d;
    std::string preset;  ///< line | conic | twisted-cubic
    std::vector<std::string> inputs;
    std::size_t count = 10;
    std::uint64_t seed = 1;
};

struct MetricOptions {
    int r = 1;
    std::size_t count = 10;
    std::uint64_t seed = 1;
    std::size_t fibers = 7;
    bool skip_sigma_gauge = false;
};

struct CohomologyOptions {
    std::vector<std::string> inputs;
    std::optional<int> k_min, k_max;  ///< default r - 3 .. r + 1
};

int cmd_kronecker(const KroneckerOptions& o, const CommonOptions& c, std::ostream& out, std::ostream& err);
int cmd_acm_verify(const AcmVerifyOptions& o, const CommonOptions& c, std::ostream& out, std::ostream& err);
int cmd_acm_random(const AcmRandomOptions& o, const CommonOptions& c, std::ostream& out, std::ostream& err);
int cmd_rational(const RationalOptions& o, const CommonOptions& c, std::ostream& out, std::ostream& err);
int cmd_metric(const MetricOptions& o, const CommonOptions& c, std::ostream& out, std::ostream& err);
int cmd_cohomology_table(const CohomologyOptions& o, const CommonOptions& c, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; maps exceptions to exit codes.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace twistorkit
