#include "sepgamma/cli/verify.hpp"

#include <cmath>
#include <sstream>

#include "sepgamma/errors.hpp"

namespace sepgamma::cli {

namespace {

constexpr double kRecomputeTolerance = 1e-9;
constexpr double kContractionSlack = 1e-10;
constexpr double kOrderingSlack = 1e-6;

std::string show(double x) { return format_double(x); }

class Checker {
 public:
  void check(std::string name, bool passed, std::string detail = {}) {
    report_.ok = report_.ok && passed;
    report_.checks.push_back({std::move(name), passed, std::move(detail)});
  }

  VerificationReport finish() { return std::move(report_); }

 private:
  VerificationReport report_;
};

double get_number(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw InputError(std::string("certificate: missing numeric field \"") + key + "\"");
  }
  return j.at(key).get<double>();
}

std::optional<double> get_optional_number(const Json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("certificate: missing field \"") + key + "\"");
  if (j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_number()) {
    throw InputError(std::string("certificate: field \"") + key + "\" must be a number or null");
  }
  return j.at(key).get<double>();
}

}  // namespace

VerificationReport verify_certificate(const Json& cert) {
  if (!cert.is_object()) throw InputError("certificate: expected a JSON object");
  for (const char* key : {"verdict", "evidence", "config", "state", "lower_method",
                          "entanglement_measure"}) {
    if (!cert.contains(key)) throw InputError(std::string("certificate: missing \"") + key + "\"");
  }

  Checker c;
  std::optional<DensityOperator> parsed;
  try {
    parsed = state_from_json(cert.at("state"));
    c.check("state is a valid density operator", true);
  } catch (const Error& e) {
    c.check("state is a valid density operator", false, e.what());
    return c.finish();
  }
  const DensityOperator& rho = *parsed;
  const Json& config = cert.at("config");
  const double entangled_tol = get_number(config, "entangled_tol");
  const double sep_tol = get_number(config, "sep_tol");
  const double sep_reconstruction_tol = get_number(config, "sep_reconstruction_tol");

  const double lower = get_number(cert, "gamma_lower");
  const std::optional<double> upper = get_optional_number(cert, "gamma_upper");
  const std::string verdict = cert.at("verdict").get<std::string>();
  const std::string method = cert.at("lower_method").get<std::string>();

  c.check("gamma_lower >= 1", lower >= 1.0, show(lower));
  if (upper) {
    c.check("gamma_lower <= gamma_upper + 1e-6", lower <= *upper + kOrderingSlack,
            show(lower) + " vs " + show(*upper));
  }

  const RealignmentBound realign = lower_bound_realignment(rho);
  c.check("gamma_lower dominates the recomputed realignment bound",
          lower >= realign.value - kRecomputeTolerance,
          show(lower) + " vs " + show(realign.value));
  if (method == "realignment") {
    c.check("realignment bound recomputes", std::abs(realign.value - lower) <= kRecomputeTolerance,
            show(realign.value) + " vs " + show(lower));
  } else if (method == "trace_floor") {
    c.check("trace-floor bound equals 1", lower == 1.0, show(lower));
  } else if (method != "witness") {
    c.check("known lower_method", false, method);
  }

  const Json& measure = cert.at("entanglement_measure");
  if (!measure.is_array() || measure.size() != 2 || !measure[0].is_number()) {
    throw InputError("certificate: entanglement_measure must be [lo, hi or null]");
  }
  c.check("measure lo = gamma_lower - 1",
          std::abs(measure[0].get<double>() - (lower - 1.0)) <= 1e-12);
  if (upper) {
    c.check("measure hi = gamma_upper - 1",
            measure[1].is_number() && std::abs(measure[1].get<double>() - (*upper - 1.0)) <= 1e-12);
  } else {
    c.check("measure hi is null without an upper bound", measure[1].is_null());
  }

  const Json& evidence = cert.at("evidence");
  if (verdict == "Entangled") {
    c.check("gamma_lower > 1 + entangled_tol", lower > 1.0 + entangled_tol, show(lower));
    if (!evidence.is_object() || !evidence.contains("A") || !evidence.contains("B") ||
        !evidence.contains("value")) {
      c.check("witness evidence present", false);
      return c.finish();
    }
    const ComplexMatrix a = matrix_from_json(evidence.at("A"), "evidence A");
    const ComplexMatrix b = matrix_from_json(evidence.at("B"), "evidence B");
    const double value = get_number(evidence, "value");
    const auto& dims = rho.dims();
    const bool shaped = a.rows() == dims.d1() && a.cols() == dims.d2() && b.rows() == dims.d1() &&
                        b.cols() == dims.d2();
    c.check("witness factors are d1 x d2", shaped);
    if (!shaped) return c.finish();
    const double na = operator_norm(a);
    const double nb = operator_norm(b);
    c.check("witness factors are contractions",
            na <= 1.0 + kContractionSlack && nb <= 1.0 + kContractionSlack,
            show(na) + ", " + show(nb));
    const double recomputed = std::abs(witness_pairing(rho.matrix(), dims, a, b));
    c.check("witness value recomputes", std::abs(recomputed - value) <= kRecomputeTolerance,
            show(recomputed) + " vs " + show(value));
    if (method == "witness") {
      c.check("gamma_lower matches witness value",
              std::abs(std::max(1.0, recomputed) - lower) <= kRecomputeTolerance);
    }
  } else if (verdict == "Separable") {
    const std::optional<double> reported = get_optional_number(cert, "reconstruction_error");
    if (!evidence.is_object() || !evidence.contains("terms") || !reported) {
      c.check("separable evidence present", false);
      return c.finish();
    }
    Json sep = evidence;
    sep["kind"] = "separable";
    sep["dims"] = cert.at("state").at("dims");
    SeparableDecomposition dec = separable_from_json(sep);
    try {
      validate(dec);
      c.check("evidence satisfies separable-decomposition invariants", true);
    } catch (const Error& e) {
      c.check("evidence satisfies separable-decomposition invariants", false, e.what());
      return c.finish();
    }
    const double err = trace_norm(rho.matrix() - mixture_matrix(dec));
    c.check("reconstruction error recomputes", std::abs(err - *reported) <= kRecomputeTolerance,
            show(err) + " vs " + show(*reported));
    c.check("reconstruction error <= sep_reconstruction_tol", err <= sep_reconstruction_tol,
            show(err));
    c.check("gamma_upper <= 1 + sep_tol", upper && *upper <= 1.0 + sep_tol);
  } else if (verdict == "Undecided") {
    c.check("no evidence for Undecided", evidence.is_null());
    c.check("gamma_lower <= 1 + entangled_tol", lower <= 1.0 + entangled_tol, show(lower));
  } else {
    c.check("known verdict", false, verdict);
  }
  return c.finish();
}

}  // namespace sepgamma::cli
