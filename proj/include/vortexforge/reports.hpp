#pragma once

#include <complex>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "vortexforge/certify.hpp"
#include "vortexforge/field.hpp"
#include "vortexforge/glprofile.hpp"
#include "vortexforge/polynomial.hpp"
#include "vortexforge/roots.hpp"
#include "vortexforge/vortex.hpp"

namespace vortexforge {

// Key order is part of the byte-determinism contract.
using Json = nlohmann::ordered_json;

/// Write-through-temp-then-rename; the destination never holds partial data.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Coefficients as "numerator/denominator" strings, ascending degree.
Json poly_to_json(const RationalPoly& p);
RationalPoly poly_from_json(const Json& j);

Json rootset_to_json(const RootSet& rs, unsigned digits = 20);
std::string rootset_to_csv(const RootSet& rs, unsigned digits = 20);
std::string rootset_to_svg(const RootSet& rs);

std::string profile_to_csv(const ProfileTable& pt);

Json certify_to_json(const CertifyReport& rep, bool with_timing);
Json nondeg_to_json(const NondegeneracyCertificate& cert);
Json ring_to_json(const RingReport& rep);
Json mode_to_json(const ModeSolution& sol);
Json symmetry_report_to_json(const FieldSymmetryReport& rep);
Json winding_to_json(const WindingReport& rep);
Json error_field_to_json(const ErrorFieldReport& rep);
Json reduced_to_json(const ReducedSolveResult& res);

std::string field_to_csv(const FieldSampler& fs,
                         const std::vector<std::vector<std::complex<double>>>& u);
std::string field_magnitude_svg(const FieldSampler& fs,
                                const std::vector<std::vector<std::complex<double>>>& u);
std::string field_phase_svg(const FieldSampler& fs,
                            const std::vector<std::vector<std::complex<double>>>& u);

}  // namespace vortexforge
