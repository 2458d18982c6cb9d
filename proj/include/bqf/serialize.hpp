#pragma once

// JSON renderings of the library's reports. Integers that fit in 64 bits are
// written as JSON numbers, larger ones as decimal strings; both are accepted
// when reading.

#include <string>

#include "bqf/density.hpp"
#include "bqf/witness.hpp"

namespace bqf {

std::string qf_info_json(const Integer& m);
std::string bq_info_json(const Integer& a, const Integer& b);

std::string certificate_to_json(const Certificate& cert);
// Throws Error(parse_error) on malformed input.
Certificate certificate_from_json(const std::string& text);

std::string verification_to_json(const VerificationReport& report);
std::string density_to_json(const DensityReport& report);
std::string growth_to_json(const GrowthReport& report);

// One prime per line.
std::string pool_to_text(const WitnessPool& pool);

}  // namespace bqf
