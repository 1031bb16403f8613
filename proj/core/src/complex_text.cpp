#include "wlab/complex_text.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "wlab/errors.hpp"

namespace wlab {
namespace {

[[noreturn]] void bad(std::string_view text) {
  throw InvalidInput("cannot parse complex literal '" + std::string(text) + "'");
}

// Reads an optionally signed decimal starting at pos; returns chars consumed
// (0 when no digits were found).
std::size_t read_number(std::string_view s, std::size_t pos, double& out) {
  const char* first = s.data() + pos;
  const char* last = s.data() + s.size();
  const char* p = first;
  bool negative = false;
  if (p < last && (*p == '+' || *p == '-')) {
    negative = *p == '-';
    ++p;
  }
  if (p == last || !(std::isdigit(static_cast<unsigned char>(*p)) || *p == '.')) return 0;
  double v = 0.0;
  auto [end, ec] = std::from_chars(p, last, v, std::chars_format::general);
  if (ec != std::errc()) return 0;
  out = negative ? -v : v;
  return static_cast<std::size_t>(end - first);
}

}  // namespace

cplx parse_complex(std::string_view text) {
  if (text.empty()) bad(text);
  for (char c : text)
    if (std::isspace(static_cast<unsigned char>(c))) bad(text);

  if (text.back() != 'i') {
    double re = 0.0;
    if (read_number(text, 0, re) != text.size()) bad(text);
    return {re, 0.0};
  }

  std::string_view body = text.substr(0, text.size() - 1);
  // Imaginary part starts at the last sign that is not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 0;) {
    if ((body[k] == '+' || body[k] == '-') && !(k > 0 && (body[k - 1] == 'e' || body[k - 1] == 'E'))) {
      split = k;
      break;
    }
  }

  double re = 0.0;
  std::string_view imag_text = body;
  if (split != std::string_view::npos && split > 0) {
    std::string_view real_text = body.substr(0, split);
    if (read_number(real_text, 0, re) != real_text.size()) bad(text);
    imag_text = body.substr(split);
  }

  double im = 0.0;
  if (imag_text.empty() || imag_text == "+") {
    im = 1.0;
  } else if (imag_text == "-") {
    im = -1.0;
  } else if (read_number(imag_text, 0, im) != imag_text.size()) {
    bad(text);
  }
  if (!std::isfinite(re) || !std::isfinite(im)) bad(text);
  return {re, im};
}

std::vector<cplx> parse_complex_list(std::string_view text) {
  std::vector<cplx> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_complex(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

double parse_real(std::string_view text) {
  double v = 0.0;
  if (text.empty() || read_number(text, 0, v) != text.size() || !std::isfinite(v))
    throw InvalidInput("cannot parse real literal '" + std::string(text) + "'");
  return v;
}

std::string format_complex(cplx z) {
  // Normalize negative zero so equal values print identically.
  double re = z.real() == 0.0 ? 0.0 : z.real();
  double im = z.imag() == 0.0 ? 0.0 : z.imag();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%s%.17gi", re, std::signbit(im) ? "" : "+", im);
  return buf;
}

}  // namespace wlab
