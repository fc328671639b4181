#pragma once

#include "moyal/grid.hpp"
#include "moyal/weyl.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

// Plot-ready CSV plus JSON-sidecar output.  Values are printed with 17
// significant digits so files round-trip doubles exactly; every file is
// written to a temp name and renamed into place.

namespace moyal::io {

inline constexpr const char* kToolVersion = "0.1.0";

// Header `x,p,value`; throws if any imaginary part exceeds 1e-12.
void write_field_csv(const std::string& path, const PhaseSpaceField& F);

// Header `x,p,re,im` for complex fields (cross-Wigner, one-sided products).
void write_complex_field_csv(const std::string& path, const PhaseSpaceField& F);

// Header `x1,x2,re,im`.
void write_kernel_csv(const std::string& path, const weyl::OperatorKernel& A);

// Single-column profiles (marginals, residuals); header `<axis>,value`.
void write_profile_csv(const std::string& path, const std::string& axis,
                       const std::vector<double>& coords,
                       const std::vector<double>& values);

void write_json(const std::string& path, const nlohmann::json& j);

nlohmann::json grid_json(const GridSpec& g);
GridSpec grid_from_json(const nlohmann::json& j);

// Sidecar skeleton: tool version, grid block, and time; callers add the
// fields that reproduce their run (state descriptor, config echo, ...).
nlohmann::json sidecar(const GridSpec& g, double time);

}  // namespace moyal::io
