#include "sqdepth/parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace sqdepth {

namespace {

[[noreturn]] void parse_error(std::string_view text, const std::string& why) {
  throw Error(ErrorCode::Parse, "cannot parse '" + std::string(text) + "': " + why);
}

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

Monomial parse_monomial(std::string_view token, std::string_view whole) {
  if (token.empty()) parse_error(whole, "empty monomial");
  if (token == "1") throw Error(ErrorCode::UnitIdeal, "the unit ideal is not supported");
  Mask bits = 0;
  std::size_t pos = 0;
  while (pos <= token.size()) {
    const auto star = std::min(token.find('*', pos), token.size());
    const auto factor = token.substr(pos, star - pos);
    if (factor.size() < 2 || factor[0] != 'x')
      parse_error(whole, "expected x<k>, got '" + std::string(factor) + "'");
    int index = 0;
    const auto digits = factor.substr(1);
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
      parse_error(whole, "bad variable '" + std::string(factor) + "'");
    if (index < 1 || index > kMaxVariables)
      throw Error(ErrorCode::IndexOutOfRange,
                  "variable x" + std::to_string(index) + " outside x1..x" +
                      std::to_string(kMaxVariables));
    const Mask bit = Mask{1} << (index - 1);
    if (bits & bit) parse_error(whole, "repeated variable in a square-free monomial");
    bits |= bit;
    pos = star + 1;
  }
  return Monomial(bits);
}

int resolve_ring(int n, int needed) {
  if (n == 0) return std::max(1, needed);
  if (needed > n)
    throw Error(ErrorCode::IndexOutOfRange,
                "variable x" + std::to_string(needed) + " outside x1..x" +
                    std::to_string(n));
  return n;
}

}  // namespace

std::vector<Monomial> parse_monomials(std::string_view text) {
  const std::string compact = strip_spaces(text);
  std::vector<Monomial> out;
  if (compact == "0") return out;
  if (compact.empty()) parse_error(text, "empty input (use 0 for the zero ideal)");
  std::string_view rest = compact;
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    const auto comma = std::min(rest.find(',', pos), rest.size());
    out.push_back(parse_monomial(rest.substr(pos, comma - pos), text));
    pos = comma + 1;
  }
  return out;
}

int max_variable(const std::vector<Monomial>& monomials) {
  int best = 0;
  for (Monomial m : monomials)
    if (m.bits() != 0) best = std::max(best, 64 - std::countl_zero(m.bits()));
  return best;
}

MonomialIdeal parse_ideal(std::string_view text, int n) {
  auto gens = parse_monomials(text);
  const int ring = resolve_ring(n, max_variable(gens));
  return minimalize(std::move(gens), ring);
}

FactorPair parse_pair(std::string_view i_text, std::string_view j_text, int n) {
  auto i_gens = parse_monomials(i_text);
  auto j_gens = parse_monomials(j_text);
  const int ring =
      resolve_ring(n, std::max(max_variable(i_gens), max_variable(j_gens)));
  return FactorPair(minimalize(std::move(i_gens), ring),
                    minimalize(std::move(j_gens), ring));
}

nlohmann::json to_json(Monomial m) { return m.indices(); }

nlohmann::json to_json(std::span<const Monomial> monomials) {
  auto out = nlohmann::json::array();
  for (Monomial m : monomials) out.push_back(to_json(m));
  return out;
}

std::vector<Monomial> monomials_from_json(const nlohmann::json& j, int n) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "expected an array of monomials");
  std::vector<Monomial> out;
  for (const auto& item : j) {
    if (!item.is_array() || item.empty())
      throw Error(ErrorCode::Parse, "a monomial must be a nonempty index array");
    std::vector<int> indices;
    for (const auto& v : item) {
      if (!v.is_number_integer()) throw Error(ErrorCode::Parse, "indices must be integers");
      indices.push_back(v.get<int>());
    }
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
      throw Error(ErrorCode::Parse, "repeated variable in a square-free monomial");
    out.push_back(Monomial::from_indices(indices, n));
  }
  return out;
}

namespace {

int ring_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw Error(ErrorCode::Parse, "expected an object with an integer field \"n\"");
  const int n = j["n"].get<int>();
  check_variable_count(n);
  return n;
}

}  // namespace

nlohmann::json pair_to_json(const FactorPair& pair) {
  return {{"n", pair.n()}, {"I", to_json(pair.I().gens())}, {"J", to_json(pair.J().gens())}};
}

FactorPair pair_from_json(const nlohmann::json& j) {
  const int n = ring_from_json(j);
  if (!j.contains("I")) throw Error(ErrorCode::Parse, "missing field \"I\"");
  auto i = minimalize(monomials_from_json(j["I"], n), n);
  auto jj = j.contains("J") ? minimalize(monomials_from_json(j["J"], n), n)
                            : MonomialIdeal(n);
  return FactorPair(std::move(i), std::move(jj));
}

nlohmann::json ideal_to_json(const MonomialIdeal& ideal) {
  return {{"n", ideal.n()}, {"I", to_json(ideal.gens())}};
}

MonomialIdeal ideal_from_json(const nlohmann::json& j) {
  const int n = ring_from_json(j);
  if (!j.contains("I")) throw Error(ErrorCode::Parse, "missing field \"I\"");
  return minimalize(monomials_from_json(j["I"], n), n);
}

}  // namespace sqdepth
