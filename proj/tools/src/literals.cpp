#include "hyplab_cli/literals.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "hyplab/errors.hpp"

namespace hyplab::cli {

namespace {

std::string strip(const std::string& s) {
    std::string out;
    for (char c : s)
        if (c != ' ' && c != '\t') out.push_back(c);
    return out;
}

double parse_decimal(const std::string& s, const std::string& whole) {
    if (s.empty()) throw ParameterError("empty number in '" + whole + "'");
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + s.size()) throw ParameterError("not a number: '" + whole + "'");
    return v;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

double parse_real(const std::string& text) {
    std::string s = strip(text);
    auto slash = s.find('/');
    if (slash == std::string::npos) return parse_decimal(s, text);
    double num = parse_decimal(s.substr(0, slash), text);
    double den = parse_decimal(s.substr(slash + 1), text);
    if (den == 0.0) throw ParameterError("zero denominator in '" + text + "'");
    return num / den;
}

cplx parse_complex(const std::string& text) {
    std::string s = strip(text);
    if (s.empty()) throw ParameterError("empty complex literal");
    if (s.back() != 'i') return parse_real(s);
    s.pop_back();
    // split at the last sign that is not part of an exponent
    std::size_t cut = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') cut = i;
    std::string re = s.substr(0, cut), im = s.substr(cut);
    double y;
    if (im.empty() || im == "+")
        y = 1.0;
    else if (im == "-")
        y = -1.0;
    else
        y = parse_real(im);
    return {re.empty() ? 0.0 : parse_real(re), y};
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& p : split_commas(text)) out.push_back(parse_real(p));
    return out;
}

std::vector<cplx> parse_complex_list(const std::string& text) {
    std::vector<cplx> out;
    for (const auto& p : split_commas(text)) out.push_back(parse_complex(p));
    return out;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) x = 0.0;  // drop the sign of zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace hyplab::cli
