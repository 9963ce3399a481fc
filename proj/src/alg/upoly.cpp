#include "qlg/alg/upoly.hpp"

#include "qlg/error.hpp"

namespace qlg::alg {

UPoly UPoly::from(const LaurentPoly& p, int var) {
    UPoly r;
    auto parts = p.split_by(var);
    if (parts.empty()) return r;
    r.low = parts.begin()->first;
    r.c.resize(parts.rbegin()->first - r.low + 1);
    for (auto& [k, v] : parts) r.c[k - r.low] = std::move(v);
    return r;
}

LaurentPoly UPoly::to_laurent(int var) const {
    LaurentPoly r;
    for (std::size_t j = 0; j < c.size(); ++j)
        if (!c[j].is_zero()) r += c[j].shifted(var_exps(var, low + static_cast<int>(j)));
    return r;
}

const LaurentPoly& UPoly::coeff(int power) const {
    static const LaurentPoly zero;
    int j = power - low;
    if (j < 0 || j >= static_cast<int>(c.size())) return zero;
    return c[j];
}

LaurentPoly UPoly::eval(const LaurentPoly& x) const {
    if (c.empty()) return {};
    LaurentPoly acc;
    for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j) {
        acc *= x;
        acc += c[j];
    }
    if (low != 0) {
        if (low < 0 && !x.is_monomial())
            throw DomainError("evaluating negative powers of u at a non-monomial point");
        acc *= x.pow(low);
    }
    return acc;
}

UPoly UPoly::derivative() const {
    UPoly r;
    r.low = low - 1;
    r.c.resize(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) r.c[j] = c[j].scaled(low + static_cast<int>(j));
    r.trim();
    return r;
}

bool UPoly::divide_linear(const LaurentPoly& x, UPoly& quotient) const {
    // u is a unit in the Laurent ring; otherwise u^low is coprime to (u - x)
    // and only the polynomial part is divided.
    if (x.is_zero()) {
        quotient = *this;
        --quotient.low;
        return true;
    }
    quotient = UPoly{};
    if (c.empty()) return true;
    std::size_t d = c.size() - 1;
    if (d == 0) return c[0].is_zero();
    std::vector<LaurentPoly> qc(d);
    qc[d - 1] = c[d];
    for (std::size_t j = d - 1; j >= 1; --j) qc[j - 1] = c[j] + x * qc[j];
    LaurentPoly rem = c[0] + x * qc[0];
    if (!rem.is_zero()) return false;
    quotient.low = low;
    quotient.c = std::move(qc);
    quotient.trim();
    return true;
}

void UPoly::trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    std::size_t lead = 0;
    while (lead < c.size() && c[lead].is_zero()) ++lead;
    if (lead == c.size()) {
        c.clear();
        low = 0;
        return;
    }
    if (lead) {
        c.erase(c.begin(), c.begin() + static_cast<long>(lead));
        low += static_cast<int>(lead);
    }
}

}  // namespace qlg::alg
