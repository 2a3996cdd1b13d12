#include "betadim/parse.hpp"

#include "betadim/errors.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace betadim {

void run_config::validate() const {
    if (precision_bits < 64) raise(errc::parse_error, "precision_bits must be >= 64");
    if (max_precision_bits < precision_bits)
        raise(errc::parse_error, "max_precision_bits must be >= precision_bits");
    if (max_depth < 1) raise(errc::parse_error, "max_depth must be >= 1");
    if (tol <= 0) raise(errc::parse_error, "tol must be > 0");
}

namespace {

std::string trimmed(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool is_integer_literal(const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

mpq_class decimal_to_rational(const std::string& s) {
    // [sign] digits [. digits] [ (e|E) [sign] digits ]
    std::string text = s;
    long exp10 = 0;
    size_t epos = text.find_first_of("eE");
    if (epos != std::string::npos) {
        std::string etail = text.substr(epos + 1);
        if (!is_integer_literal(etail)) raise(errc::parse_error, "bad exponent in '" + s + "'");
        exp10 = std::strtol(etail.c_str(), nullptr, 10);
        text = text.substr(0, epos);
    }
    bool neg = false;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
        neg = text[0] == '-';
        text = text.substr(1);
    }
    size_t dot = text.find('.');
    std::string digits = text;
    long frac = 0;
    if (dot != std::string::npos) {
        digits = text.substr(0, dot) + text.substr(dot + 1);
        frac = static_cast<long>(text.size() - dot - 1);
    }
    if (digits.empty() || !is_integer_literal(digits))
        raise(errc::parse_error, "malformed number '" + s + "'");
    mpq_class q(mpz_class(digits, 10));
    long shift = exp10 - frac;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift >= 0)
        q *= mpq_class(pow10);
    else
        q /= mpq_class(pow10);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
}

} // namespace

mpq_class parse_rational(const std::string& raw) {
    std::string s = trimmed(raw);
    if (s.empty()) raise(errc::parse_error, "empty number");
    size_t slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = trimmed(s.substr(0, slash));
        std::string den = trimmed(s.substr(slash + 1));
        if (!is_integer_literal(num) || !is_integer_literal(den))
            raise(errc::parse_error, "malformed rational '" + raw + "'");
        mpz_class d(den, 10);
        if (d == 0) raise(errc::parse_error, "zero denominator in '" + raw + "'");
        mpq_class q(mpz_class(num, 10), d);
        q.canonicalize();
        return q;
    }
    if (is_integer_literal(s)) return mpq_class(mpz_class(s, 10));
    return decimal_to_rational(s);
}

real_alg parse_real(const std::string& raw) {
    std::string s = trimmed(raw);
    if (s.rfind("poly:", 0) != 0) return real_alg(parse_rational(s));

    // poly:[c0,c1,...,cn]@[lo,hi]
    size_t at = s.find('@');
    if (at == std::string::npos) raise(errc::parse_error, "polynomial spec missing '@[lo,hi]'");
    std::string coeff_part = trimmed(s.substr(5, at - 5));
    std::string iv_part = trimmed(s.substr(at + 1));
    if (coeff_part.size() < 2 || coeff_part.front() != '[' || coeff_part.back() != ']')
        raise(errc::parse_error, "polynomial coefficients must be bracketed");
    if (iv_part.size() < 2 || iv_part.front() != '[' || iv_part.back() != ']')
        raise(errc::parse_error, "isolating interval must be bracketed");

    auto split = [](const std::string& body) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : body) {
            if (c == ',') {
                out.push_back(cur);
                cur.clear();
            } else
                cur += c;
        }
        out.push_back(cur);
        return out;
    };

    std::vector<mpq_class> coeffs;
    for (const auto& tok : split(coeff_part.substr(1, coeff_part.size() - 2)))
        coeffs.push_back(parse_rational(tok));
    auto iv = split(iv_part.substr(1, iv_part.size() - 2));
    if (iv.size() != 2) raise(errc::parse_error, "isolating interval needs two endpoints");
    mpq_class lo = parse_rational(iv[0]), hi = parse_rational(iv[1]);

    polyq p{std::vector<mpq_class>(coeffs)};
    if (p.degree() < 1) raise(errc::parse_error, "polynomial must be non-constant");
    if (auto r = number_field::rational_root(p, lo, hi)) return real_alg(*r);
    return real_alg::generator(number_field::make(p, lo, hi));
}

std::vector<int> parse_theta(const std::string& raw) {
    std::vector<int> out;
    std::string cur;
    auto flush = [&] {
        std::string t = trimmed(cur);
        if (t.empty()) raise(errc::parse_error, "empty digit in theta list");
        if (!is_integer_literal(t) || t[0] == '-')
            raise(errc::parse_error, "theta digits must be non-negative integers");
        out.push_back(static_cast<int>(std::strtol(t.c_str(), nullptr, 10)));
        cur.clear();
    };
    for (char c : raw) {
        if (c == ',')
            flush();
        else
            cur += c;
    }
    flush();
    if (out.size() < 2) raise(errc::parse_error, "theta needs at least two digits");
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1]) raise(errc::parse_error, "theta digits must be strictly increasing");
    return out;
}

void load_config_file(const std::string& path, run_config& cfg) {
    std::ifstream in(path);
    if (!in) raise(errc::parse_error, "cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trimmed(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            raise(errc::parse_error, path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trimmed(t.substr(0, eq));
        std::string val = trimmed(t.substr(eq + 1));
        if (key == "precision_bits")
            cfg.precision_bits = static_cast<int>(std::strtol(val.c_str(), nullptr, 10));
        else if (key == "max_precision_bits")
            cfg.max_precision_bits = static_cast<int>(std::strtol(val.c_str(), nullptr, 10));
        else if (key == "max_depth")
            cfg.max_depth = static_cast<int>(std::strtol(val.c_str(), nullptr, 10));
        else if (key == "tol")
            cfg.tol = parse_rational(val);
        else if (key == "format") {
            if (val == "json")
                cfg.output = run_config::fmt::json;
            else if (val == "csv")
                cfg.output = run_config::fmt::csv;
            else
                raise(errc::parse_error, "format must be json or csv");
        } else
            raise(errc::parse_error, "unknown config key '" + key + "'");
    }
    cfg.validate();
}

void apply_env(run_config& cfg) {
    if (const char* p = std::getenv("BETADIM_PREC")) {
        long bits = std::strtol(p, nullptr, 10);
        if (bits >= 64) cfg.precision_bits = static_cast<int>(bits);
        if (cfg.max_precision_bits < cfg.precision_bits)
            cfg.max_precision_bits = cfg.precision_bits * 8;
    }
}

} // namespace betadim
