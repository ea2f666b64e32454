#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "sepgamma/crossnorm.hpp"
#include "sepgamma/states.hpp"

namespace sepgamma::cli {

/// Key order is insertion order, so emitted files are byte-stable.
using Json = nlohmann::ordered_json;

/// Malformed or semantically invalid input file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kToolVersion = "sepgamma " SEPGAMMA_VERSION;

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, const std::string& what);

/// {"kind":"density","dims":[d1,d2],"matrix":[[[re,im],...],...]}
Json state_to_json(const DensityOperator& rho);
DensityOperator state_from_json(const Json& j);

/// {"kind":"separable","dims":[d1,d2],"terms":[{"weight","rho1","rho2"},...]}
Json separable_to_json(const SeparableDecomposition& dec);
SeparableDecomposition separable_from_json(const Json& j);

/// {"kind":"decomposition","dims":[d1,d2],"terms":[{"u","v"},...]}
Json decomposition_to_json(const ElementaryDecomposition& dec);

/// Accepts either the "decomposition" or the "separable" form.
ElementaryDecomposition decomposition_from_json(const Json& j);

Json config_to_json(const SearchConfig& config);

/// Certificate file. Keys, in order: verdict, gamma_lower, gamma_upper,
/// lower_method, entanglement_measure, evidence, reconstruction_error,
/// config, iterations, state, tool_version.
Json certificate_to_json(const Certificate& cert, const DensityOperator& rho,
                         const SearchConfig& config);

/// Bounds report: gamma_lower, gamma_upper, lower_method, spectrum.
Json bounds_to_json(const GammaBounds& bounds, const RealignmentBound& realignment);

Json read_json_file(const std::string& path);

/// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text, std::ostream& out);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

}  // namespace sepgamma::cli
