#pragma once

#include <json.hpp>
#include <string>

#include "dtwc/lattice.hpp"
#include "dtwc/poisson.hpp"
#include "dtwc/quasipoly.hpp"
#include "dtwc/series.hpp"
#include "dtwc/wallcross.hpp"

namespace dtwc::io {

using Json = nlohmann::json;

// Every reader takes the JSON pointer of its argument and reports errors there.
const Json& field(const Json& j, const char* key, const std::string& path);
bool has(const Json& j, const char* key);

std::int64_t read_int(const Json& j, const std::string& path);
Rational read_rational(const Json& j, const std::string& path);
IntVector read_ints(const Json& j, const std::string& path, std::optional<std::size_t> length = std::nullopt);
IntMatrix read_matrix(const Json& j, const std::string& path);

LatticeSpec read_lattice(const Json& j, const std::string& path);
Json write_lattice(const LatticeSpec& s);
// SHA-256 of the compact, key-sorted lattice JSON, hex encoded.
std::string fingerprint(const LatticeSpec& s);

LaurentPolynomial read_polynomial(const Json& j, std::size_t nvars, const std::string& path);
Json write_polynomial(const LaurentPolynomial& p);
RationalFunction read_fraction(const Json& j, std::size_t nvars, const std::string& path);
Json write_fraction(const RationalFunction& f);
LinearFunctional read_functional(const Json& j, std::size_t nvars, const std::string& path);
Json write_functional(const LinearFunctional& L);
Window read_window(const Json& j, std::size_t nvars, const std::string& path);
Json write_window(const Window& w);
LaurentSeries read_series(const Json& j, std::size_t nvars, const std::string& path);
Json write_series(const LaurentSeries& s);

QuasiPolynomial read_quasipoly(const Json& j, const std::string& path);
Json write_quasipoly(const QuasiPolynomial& q);
Json write_detect(const DetectResult& r);
Json write_reexpand(const ReexpandVerdict& v);

KClass read_class(const Json& j, const Lattice& lat, const std::string& path);
Json write_class(const KClass& a);
TorusElement read_element(const Json& j, const LatticePtr& lat, const std::string& path);
Json write_element(const TorusElement& x);
Truncation read_truncation(const Json& j, const Lattice& lat, const std::string& path);
Json write_truncation(const Truncation& t);
Slope read_slope(const Json& j, const std::string& path);

GroupSpec read_group(const Json& j, const Lattice& lat, const std::string& path);
Json write_duality(const DualityReport& r);
Json write_gamma(const GammaVerdict& v);

}  // namespace dtwc::io
