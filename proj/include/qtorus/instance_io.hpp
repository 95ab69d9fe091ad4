#pragma once

// JSON interchange: instance files, dimension results, sublattices and
// algebra elements.
//
// Instance file:
//   {"rank": n,
//    "value_group": {"free": ["q", ...], "torsion_order": m},
//    "lambda": [{"i": 1, "j": 2, "exponents": {"q": 1}, "torsion": 0}, ...]}
// Only pairs 1 <= i < j <= n appear; missing pairs are 1. The canonical form
// lists non-identity entries sorted by (i, j) and omits zero exponents.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qtorus/pairing.hpp"
#include "qtorus/twisted_algebra.hpp"

namespace qtorus::io {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

MultiparameterMatrix parse_instance(const Json& j);
MultiparameterMatrix parse_instance_text(std::string_view text);
MultiparameterMatrix read_instance(const std::filesystem::path& path);

Json serialize(const MultiparameterMatrix& lambda);
std::string dump_instance(const MultiparameterMatrix& lambda);
void write_instance(const std::filesystem::path& path, const MultiparameterMatrix& lambda);

Json to_json(const Integer& x);
Json to_json(const Sublattice& b);
Json to_json(const DimensionResult& d);
Json to_json(const GroupElement& e, const ValueGroup& g);

Sublattice parse_sublattice(const Json& j, std::size_t ambient_rank);

/// Element as a list of terms {"coef": "p/q", "q": {"name": v}, "torsion": t, "x": [a1..an]}.
TwistedElement parse_element(const Json& j, std::shared_ptr<const MultiparameterMatrix> ctx);
Json to_json(const TwistedElement& e);

}  // namespace qtorus::io
