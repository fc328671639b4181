#pragma once

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

// Self-contained verification suites over the three layers: the exact symbol
// algebra, the Wigner/Weyl transform stack, and the coupled dynamics.  Each
// check records a measured value against its pinned tolerance; reports are
// deterministic for a fixed seed.

namespace moyal::verify {

struct CheckResult {
    std::string name;
    bool passed;
    double measured;   // residual/error actually observed
    double tolerance;  // 0 for exact symbolic identities
};

struct SuiteReport {
    std::string suite;
    unsigned seed;
    double elapsed_seconds = 0.0;
    std::vector<CheckResult> checks;

    bool all_passed() const;
    nlohmann::json to_json() const;
};

struct VerifyOptions {
    unsigned seed = 20250901;
    // Sign applied to the quantum potential in the Hamilton-Jacobi checks;
    // flipping it must make the dynamics suite fail (convention tripwire).
    double q_sign = 1.0;
};

SuiteReport run_algebra_suite(const VerifyOptions& opt = {});
SuiteReport run_transform_suite(const VerifyOptions& opt = {});
SuiteReport run_dynamics_suite(const VerifyOptions& opt = {});

// All three suites in order; report order is deterministic.
std::vector<SuiteReport> run_suites(const std::string& which,
                                    const VerifyOptions& opt = {});

nlohmann::json reports_json(const std::vector<SuiteReport>& reports);

}  // namespace moyal::verify
