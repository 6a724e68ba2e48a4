#include "uniadd/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "uniadd/modarith.hpp"

namespace uniadd {

Polynomial::Polynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::parse(const std::string& text) {
    auto trim = [](std::string s) {
        const char* ws = " \t";
        auto b = s.find_first_not_of(ws);
        if (b == std::string::npos) return std::string();
        auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    };
    if (trim(text).empty()) throw domain_error("polynomial text is empty");

    std::vector<mpz_class> coeffs;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        std::string t = trim(token);
        bool ok = !t.empty();
        for (std::size_t i = 0; ok && i < t.size(); ++i) {
            char c = t[i];
            if (i == 0 && (c == '+' || c == '-') && t.size() > 1) continue;
            if (c < '0' || c > '9') ok = false;
        }
        if (!ok) throw domain_error("invalid coefficient token '" + trim(token) + "'");
        if (t[0] == '+') t.erase(0, 1);
        coeffs.emplace_back(t);
    }
    if (!text.empty() && text.back() == ',')
        throw domain_error("invalid coefficient token ''");

    Polynomial F(std::move(coeffs));
    if (F.is_zero()) throw domain_error("all coefficients are zero");
    return F;
}

mpz_class Polynomial::coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : mpz_class(0);
}

std::uint64_t Polynomial::eval_mod(std::int64_t v, std::uint64_t m) const {
    if (m == 0) throw domain_error("modulus must be positive");
    if (m >> 62 != 0) throw resource_error("eval_mod: modulus exceeds 2^62");
    if (m == 1) return 0;
    std::int64_t sm = static_cast<std::int64_t>(m);
    std::uint64_t vm = static_cast<std::uint64_t>(((v % sm) + sm) % sm);
    std::uint64_t acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        acc = mulmod(acc, vm, m);
        acc = addmod(acc, mpz_fdiv_ui(coeffs_[i].get_mpz_t(), m), m);
    }
    return acc;
}

mpz_class Polynomial::eval(const mpz_class& v) const {
    mpz_class acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * v + coeffs_[i];
    return acc;
}

mpz_class Polynomial::alternating_sum() const { return eval(-1); }

Polynomial Polynomial::derivative() const {
    std::vector<mpz_class> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d.push_back(mpz_class(static_cast<unsigned long>(i)) * coeffs_[i]);
    return Polynomial(std::move(d));
}

mpz_class Polynomial::content(bool include_constant) const {
    mpz_class g = 0;
    for (std::size_t i = include_constant ? 0 : 1; i < coeffs_.size(); ++i)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), coeffs_[i].get_mpz_t());
    return g;
}

std::string Polynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) out += ',';
        out += coeffs_[i].get_str();
    }
    return out;
}

SparseForm sparse_form(const Polynomial& F) {
    require_nonconstant(F);
    SparseForm sf;
    const auto& c = F.coeffs();
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] != 0) sf.terms.push_back({c[i], static_cast<int>(i)});
    return sf;
}

ContentSplit shifted_content_split(const Polynomial& F, std::uint64_t ell) {
    require_nonconstant(F);
    if (!is_prime(ell)) throw domain_error("ell must be prime");
    std::vector<mpz_class> body = F.coeffs();
    mpz_class c0 = body[0];
    body[0] = 0;
    mpz_class g = 0;
    for (const auto& a : body) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    int t = 0;
    mpz_class lz(static_cast<unsigned long>(ell));
    while (mpz_divisible_p(g.get_mpz_t(), lz.get_mpz_t())) {
        ++t;
        g /= lz;
    }
    mpz_class scale = 1;
    for (int i = 0; i < t; ++i) scale *= lz;
    for (auto& a : body) a /= scale;
    return {t, Polynomial(std::move(body)), c0};
}

bool is_constant_map_mod(const Polynomial& F, std::uint64_t ell) {
    if (!is_prime(ell)) throw domain_error("ell must be prime");
    if (ell > static_cast<std::uint64_t>(std::max(F.degree(), 0))) {
        // A nonzero polynomial of degree < ell cannot vanish at all ell points,
        // so constancy is equivalent to every non-constant coefficient
        // vanishing mod ell.
        const auto& c = F.coeffs();
        for (std::size_t i = 1; i < c.size(); ++i)
            if (mpz_fdiv_ui(c[i].get_mpz_t(), ell) != 0) return false;
        return true;
    }
    std::uint64_t first = F.eval_mod(0, ell);
    for (std::uint64_t v = 1; v < ell; ++v)
        if (F.eval_mod(static_cast<std::int64_t>(v), ell) != first) return false;
    return true;
}

void require_nonconstant(const Polynomial& F) {
    if (F.degree() < 1) throw domain_error("polynomial must be nonconstant");
}

}  // namespace uniadd
