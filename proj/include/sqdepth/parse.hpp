#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "sqdepth/core.hpp"

namespace sqdepth {

/// Parses the text form of a monomial list: `x1*x6, x1*x5, x2*x4`, with
/// whitespace ignored and `0` for the empty list. Throws Parse on malformed
/// text.
std::vector<Monomial> parse_monomials(std::string_view text);

/// Largest variable index used, or 0 when there is none.
int max_variable(const std::vector<Monomial>& monomials);

/// Text form of an ideal. With n = 0 the ring is the smallest one holding
/// every generator.
MonomialIdeal parse_ideal(std::string_view text, int n = 0);

/// Builds a pair from I and J text; n = 0 infers the ring from both.
FactorPair parse_pair(std::string_view i_text, std::string_view j_text, int n = 0);

/// Index-array form, e.g. [[1,6],[1,5]].
nlohmann::json to_json(Monomial m);
nlohmann::json to_json(std::span<const Monomial> monomials);
std::vector<Monomial> monomials_from_json(const nlohmann::json& j, int n);

/// `{"n": 6, "I": [[1,6], ...], "J": [[1,2,4], ...]}`; J may be omitted.
nlohmann::json pair_to_json(const FactorPair& pair);
FactorPair pair_from_json(const nlohmann::json& j);
/// `{"n": 6, "I": [...]}`.
nlohmann::json ideal_to_json(const MonomialIdeal& ideal);
MonomialIdeal ideal_from_json(const nlohmann::json& j);

}  // namespace sqdepth
