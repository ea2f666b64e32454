#include "sepgamma/cli/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sepgamma/errors.hpp"

namespace sepgamma::cli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) bad(where + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) bad(where + ": non-finite number");
  return x;
}

BipartiteDims dims_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    bad(where + ": \"dims\" must be [d1, d2] with positive integers");
  }
  const auto d1 = j[0].get<long long>();
  const auto d2 = j[1].get<long long>();
  if (d1 < 1 || d2 < 1 || d1 * d2 > 256) {
    bad(where + ": dims out of range (each >= 1, d1*d2 <= 256)");
  }
  return BipartiteDims(d1, d2);
}

Json dims_to_json(const BipartiteDims& dims) { return Json::array({dims.d1(), dims.d2()}); }

void expect_kind(const Json& j, const char* kind, const std::string& where) {
  const Json& k = field(j, "kind", where);
  if (!k.is_string() || k.get<std::string>() != kind) {
    bad(where + ": expected \"kind\": \"" + std::string(kind) + "\"");
  }
}

ComplexMatrix square_matrix(const Json& j, Index n, const std::string& what) {
  ComplexMatrix m = matrix_from_json(j, what);
  if (m.rows() != n || m.cols() != n) {
    bad(what + ": expected " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  }
  return m;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) bad(what + ": matrix must be a non-empty array of rows");
  const auto rows = static_cast<Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) bad(what + ": matrix rows must be non-empty arrays");
  const auto cols = static_cast<Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      bad(what + ": row " + std::to_string(r) + " has the wrong length");
    }
    for (Index c = 0; c < cols; ++c) {
      const Json& z = row[static_cast<std::size_t>(c)];
      if (!z.is_array() || z.size() != 2) {
        bad(what + ": entry (" + std::to_string(r) + "," + std::to_string(c) +
            ") must be a [re, im] pair");
      }
      m(r, c) = Complex(number(z[0], what), number(z[1], what));
    }
  }
  return m;
}

Json state_to_json(const DensityOperator& rho) {
  Json j;
  j["kind"] = "density";
  j["dims"] = dims_to_json(rho.dims());
  j["matrix"] = matrix_to_json(rho.matrix());
  return j;
}

DensityOperator state_from_json(const Json& j) {
  const std::string where = "state file";
  expect_kind(j, "density", where);
  const BipartiteDims dims = dims_from_json(field(j, "dims", where), where);
  ComplexMatrix m = square_matrix(field(j, "matrix", where), dims.composite(), where);
  return DensityOperator::from_matrix(std::move(m), dims);
}

Json separable_to_json(const SeparableDecomposition& dec) {
  Json j;
  j["kind"] = "separable";
  j["dims"] = dims_to_json(dec.dims);
  Json terms = Json::array();
  for (const ProductTerm& t : dec.terms) {
    Json term;
    term["weight"] = t.weight;
    term["rho1"] = matrix_to_json(t.rho1);
    term["rho2"] = matrix_to_json(t.rho2);
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  return j;
}

SeparableDecomposition separable_from_json(const Json& j) {
  const std::string where = "separable decomposition";
  expect_kind(j, "separable", where);
  SeparableDecomposition dec{dims_from_json(field(j, "dims", where), where), {}};
  const Json& terms = field(j, "terms", where);
  if (!terms.is_array()) bad(where + ": \"terms\" must be an array");
  for (const Json& t : terms) {
    dec.terms.push_back({number(field(t, "weight", where), where),
                         square_matrix(field(t, "rho1", where), dec.dims.d1(), where + " rho1"),
                         square_matrix(field(t, "rho2", where), dec.dims.d2(), where + " rho2")});
  }
  return dec;
}

Json decomposition_to_json(const ElementaryDecomposition& dec) {
  Json j;
  j["kind"] = "decomposition";
  j["dims"] = dims_to_json(dec.dims());
  Json terms = Json::array();
  for (const ElementaryTerm& t : dec.terms()) {
    Json term;
    term["u"] = matrix_to_json(t.u);
    term["v"] = matrix_to_json(t.v);
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  return j;
}

ElementaryDecomposition decomposition_from_json(const Json& j) {
  const std::string where = "decomposition file";
  const Json& kind = field(j, "kind", where);
  if (kind == "separable") {
    SeparableDecomposition sep = separable_from_json(j);
    validate(sep);
    return to_elementary(sep);
  }
  expect_kind(j, "decomposition", where);
  const BipartiteDims dims = dims_from_json(field(j, "dims", where), where);
  const Json& terms = field(j, "terms", where);
  if (!terms.is_array()) bad(where + ": \"terms\" must be an array");
  std::vector<ElementaryTerm> out;
  for (const Json& t : terms) {
    out.push_back({square_matrix(field(t, "u", where), dims.d1(), where + " u"),
                   square_matrix(field(t, "v", where), dims.d2(), where + " v")});
  }
  return {dims, std::move(out)};
}

Json config_to_json(const SearchConfig& c) {
  Json j;
  j["restarts"] = c.restarts;
  j["max_iters"] = c.max_iters;
  j["step_init"] = c.step_init;
  j["step_shrink"] = c.step_shrink;
  j["seed"] = c.seed;
  j["rank_padding"] = c.rank_padding;
  j["entangled_tol"] = c.entangled_tol;
  j["sep_tol"] = c.sep_tol;
  j["sep_reconstruction_tol"] = c.sep_reconstruction_tol;
  j["convergence_tol"] = c.convergence_tol;
  return j;
}

Json certificate_to_json(const Certificate& cert, const DensityOperator& rho,
                         const SearchConfig& config) {
  const MeasureInterval measure = measure_from_bounds(cert.bounds);
  Json j;
  j["verdict"] = std::string(to_string(cert.verdict));
  j["gamma_lower"] = cert.bounds.lower;
  j["gamma_upper"] = cert.bounds.upper ? Json(*cert.bounds.upper) : Json(nullptr);
  j["lower_method"] = std::string(to_string(cert.bounds.lower_method));
  j["entanglement_measure"] =
      Json::array({measure.lo, measure.hi ? Json(*measure.hi) : Json(nullptr)});
  if (cert.verdict == Verdict::Separable && cert.separable) {
    Json terms = separable_to_json(*cert.separable)["terms"];
    Json evidence;
    evidence["terms"] = std::move(terms);
    j["evidence"] = std::move(evidence);
  } else if (cert.verdict == Verdict::Entangled && cert.witness) {
    Json evidence;
    evidence["A"] = matrix_to_json(cert.witness->a);
    evidence["B"] = matrix_to_json(cert.witness->b);
    evidence["value"] = cert.witness->value;
    j["evidence"] = std::move(evidence);
  } else {
    j["evidence"] = nullptr;
  }
  j["reconstruction_error"] =
      cert.reconstruction_error ? Json(*cert.reconstruction_error) : Json(nullptr);
  j["config"] = config_to_json(config);
  Json iterations;
  iterations["witness"] = cert.bounds.witness_iterations;
  iterations["search"] = cert.bounds.search_iterations;
  j["iterations"] = std::move(iterations);
  j["state"] = state_to_json(rho);
  j["tool_version"] = kToolVersion;
  return j;
}

Json bounds_to_json(const GammaBounds& bounds, const RealignmentBound& realignment) {
  Json j;
  j["gamma_lower"] = bounds.lower;
  j["gamma_upper"] = bounds.upper ? Json(*bounds.upper) : Json(nullptr);
  j["lower_method"] = std::string(to_string(bounds.lower_method));
  j["spectrum"] = realignment.spectrum;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) bad("cannot open " + path + " for writing");
  file << text;
  if (!file) bad("failed writing " + path);
}

}  // namespace sepgamma::cli
