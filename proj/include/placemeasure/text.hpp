#pragma once

// Text forms shared by the command line tool and the definition files.
//
//   rational place   2 | inf
//   place            7:2:3 | 12:inf:5
//   set              [7:2:1, 1:3:0] | ~[1:2:0] | Y
//   value            3/4 | -1/log(2) | 2*log(2) - log(3) + 1 | 0.25
//   element          rat:12 | rat:-5/8 | cycunit:7

#include <cctype>
#include <cstdlib>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "global.hpp"
#include "integrate.hpp"

namespace placemeasure::text {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline natural parse_natural(std::string_view s) {
  std::string t = trim(s);
  if (t.empty() || t.size() > 18 || !std::all_of(t.begin(), t.end(), [](unsigned char ch) {
        return std::isdigit(ch) != 0;
      }))
    throw parse_error("expected a nonnegative integer, got '" + t + "'");
  return std::stoull(t);
}

inline rational parse_rational(std::string_view s) {
  static const std::regex form(R"([+-]?\d+(/\d+)?)");
  std::string t = trim(s);
  if (!std::regex_match(t, form)) throw parse_error("expected a rational, got '" + t + "'");
  if (t.front() == '+') t.erase(0, 1);
  auto slash = t.find('/');
  if (slash != std::string::npos && mpz_class(t.substr(slash + 1)) == 0)
    throw parse_error("zero denominator in '" + t + "'");
  rational q(t);
  q.canonicalize();
  return q;
}

inline rational_place parse_rational_place(std::string_view s) {
  std::string t = trim(s);
  if (t == "inf" || t == "∞") return rational_place::infinite();
  natural p = parse_natural(t);
  return rational_place::finite(p);
}

inline level parse_level(std::string_view s) {
  natural n = parse_natural(s);
  if (n == 0 || n % 4 == 2)
    throw domain_error(error_code::invalid_level,
                       std::to_string(n) + " is not a canonical conductor");
  return level(n);
}

inline place parse_place(std::string_view s) {
  std::string t = trim(s);
  auto a = t.find(':');
  auto b = a == std::string::npos ? a : t.find(':', a + 1);
  if (b == std::string::npos || t.find(':', b + 1) != std::string::npos)
    throw parse_error("expected n:p:rep, got '" + t + "'");
  return place(parse_level(t.substr(0, a)), parse_rational_place(t.substr(a + 1, b - a - 1)),
               parse_natural(t.substr(b + 1)));
}

inline std::vector<place> parse_place_list(std::string_view s) {
  std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw parse_error("expected [place, ...], got '" + t + "'");
  std::vector<place> out;
  std::string body = trim(std::string_view(t).substr(1, t.size() - 2));
  if (body.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = body.find(',', start);
    out.push_back(parse_place(std::string_view(body).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline algebra_set parse_set(std::string_view s) {
  std::string t = trim(s);
  if (t == "Y") return algebra_set::everything();
  if (!t.empty() && t.front() == '~')
    return complement(algebra_set(disjoint_decomposition(parse_place_list(t.substr(1)))));
  return algebra_set(disjoint_decomposition(parse_place_list(t)));
}

inline ring_set parse_ring_set(std::string_view s) {
  auto a = parse_set(s);
  if (!in_ring(a)) throw parse_error("expected a compact set literal, got '" + trim(s) + "'");
  return a.core();
}

namespace detail {

inline std::vector<std::string> split_terms(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if ((ch == '+' || ch == '-') && depth == 0 && i > start) {
      out.push_back(s.substr(start, i - start));
      start = i;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

}  // namespace detail

inline map_value parse_value(std::string_view s) {
  std::string t = trim(s);
  if (t.rfind("≈", 0) == 0) t = trim(std::string_view(t).substr(std::string_view("≈").size()));
  std::string compact;
  for (char ch : t)
    if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
  if (compact.empty()) throw parse_error("empty value");

  static const std::regex over_log(R"(([+-]?\d+(?:/\d+)?)/log\((\d+)\))");
  static const std::regex log_term(R"(([+-]?)(?:(\d+(?:/\d+)?)\*)?log\((\d+)\))");
  std::smatch m;
  if (std::regex_match(compact, m, over_log)) {
    natural p = parse_natural(m[2].str());
    if (!arith::is_prime(p)) throw domain_error(error_code::bad_prime, m[2].str() + " is not prime");
    return map_value::over_log(parse_rational(m[1].str()), p);
  }
  if (compact.find("log(") != std::string::npos) {
    rational constant;
    std::map<natural, rational> logs;
    for (const auto& term : detail::split_terms(compact)) {
      if (std::regex_match(term, m, log_term)) {
        rational q = m[2].matched ? parse_rational(m[2].str()) : rational(1);
        if (m[1].str() == "-") q = -q;
        natural p = parse_natural(m[3].str());
        if (!arith::is_prime(p)) throw domain_error(error_code::bad_prime, m[3].str() + " is not prime");
        logs[p] += q;
      } else {
        constant += parse_rational(term);
      }
    }
    return map_value::log_linear(constant, std::move(logs));
  }
  if (compact.find_first_of(".eE") != std::string::npos) {
    char* end = nullptr;
    double x = std::strtod(compact.c_str(), &end);
    if (end != compact.c_str() + compact.size()) throw parse_error("bad decimal '" + compact + "'");
    return map_value::real(x);
  }
  return map_value::exact(parse_rational(compact));
}

inline extended_value parse_extended(std::string_view s) {
  std::string t = trim(s);
  if (t == "inf" || t == "+inf") return extended_value::plus_infinity();
  if (t == "-inf") return extended_value::minus_infinity();
  return extended_value(parse_value(t));
}

/// rat:<q> or cycunit:<p>; file: literals are resolved by the io layer.
inline algebraic_element parse_element(std::string_view s) {
  std::string t = trim(s);
  if (t.rfind("rat:", 0) == 0) return algebraic_element::from_rational(parse_rational(t.substr(4)));
  if (t.rfind("cycunit:", 0) == 0)
    return algebraic_element::from_cyclotomic_unit(parse_natural(t.substr(8)));
  throw parse_error("expected rat:<q>, cycunit:<p> or file:<path>, got '" + t + "'");
}

}  // namespace placemeasure::text
