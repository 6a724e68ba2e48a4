#pragma once

#include <string>
#include <vector>

#include "uniadd/classifier.hpp"
#include "uniadd/empirical.hpp"
#include "uniadd/expsum.hpp"
#include "uniadd/vset.hpp"

// Deterministic report serialization: stable key order, large integers as
// decimal strings, floats with 12 significant digits.
namespace uniadd::io {

std::string fmt_double(double v);

// coefficients as an array of decimal strings
std::string poly_json(const Polynomial& F);

std::string classification_json(const Polynomial& F, const ClassificationReport& delange,
                                const ClassificationReport& prop21);
std::string sf_scan_csv(const std::vector<ScanRow>& rows);
std::string sf_scan_json(const std::vector<ScanRow>& rows);

std::string expsum_json(const Polynomial& F, const ExpSumReport& rep);
std::string expsum_scan_csv(const ExpSumScan& scan);
std::string expsum_scan_json(const ExpSumScan& scan);

std::string vset_json(const Polynomial& F, const VSetReport& rep);

std::string histogram_csv(const UniformityReport& rep);
std::string distribution_json(const UniformityReport& rep);

std::string convenient_params_json(const ConvenientParams& p, double inconvenient);
std::string decomposition_json(const Decomposition& d);
std::string conditional_json(const ConvenientParams& p, const ConditionalTable& t,
                             std::uint64_t q);
std::string overrep_json(const OverrepResult& r, int d, std::uint64_t q1, std::uint64_t x);

}  // namespace uniadd::io
