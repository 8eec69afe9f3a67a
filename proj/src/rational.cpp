#include "fsum/rational.hpp"
#include "fsum/errors.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>

namespace fsum {

Float to_float(const Rational& r) { return Float(r); }

Float to_float(const Int& n) { return Float(n); }

std::string decimal(const Float& x) {
    std::ostringstream os;
    os << std::setprecision(30) << x;
    return os.str();
}

std::string decimal(const Rational& r) { return decimal(to_float(r)); }

namespace {

bool valid_integer_text(std::string_view s) {
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw parse_error("empty rational literal");
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        if (!valid_integer_text(s)) throw parse_error("bad rational literal: '" + std::string(text) + "'");
        return Rational(Int(std::string(s)));
    }
    std::string_view num = trim(s.substr(0, slash));
    std::string_view den = trim(s.substr(slash + 1));
    if (!valid_integer_text(num) || !valid_integer_text(den))
        throw parse_error("bad rational literal: '" + std::string(text) + "'");
    Int d{std::string(den)};
    if (d == 0) throw parse_error("zero denominator in '" + std::string(text) + "'");
    return Rational(Int(std::string(num)), d);
}

std::string format_rational(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b; // truncates toward zero
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

Int floor_rational(const Rational& r) { return floor_div(numerator(r), denominator(r)); }

Int iroot(const Int& x, unsigned k) {
    if (x < 0) throw std::domain_error("iroot of negative value");
    if (k == 0) throw std::domain_error("iroot with k = 0");
    if (x == 0 || x == 1 || k == 1) return x;
    // Newton iteration from an over-estimate; converges monotonically down.
    Int r = Int(1) << static_cast<unsigned>(msb(x) / k + 1);
    while (true) {
        Int next = ((k - 1) * r + x / pow(r, k - 1)) / k;
        if (next >= r) break;
        r = next;
    }
    // Invariant on return: r^k <= x < (r+1)^k.
    while (pow(r, k) > x) --r;
    while (pow(r + 1, k) <= x) ++r;
    return r;
}

} // namespace fsum
