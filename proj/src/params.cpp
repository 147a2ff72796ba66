#include "gbbm/params.hpp"

#include <cmath>
#include <stdexcept>

namespace gbbm {

void Parameters::validate() const {
    for (double v : {gamma1, gamma2, delta1, delta2, gamma, gamma_x}) {
        if (!std::isfinite(v)) throw std::invalid_argument("parameters must be finite");
    }
    if (!(gamma1 > 0.0)) throw std::invalid_argument("gamma1 must be > 0");
    if (!(delta1 > 0.0)) throw std::invalid_argument("delta1 must be > 0");
}

bool Parameters::energy_conserving() const noexcept {
    return gamma == kSevenFortyEighths && gamma_x == kSevenFortyEighths;
}

double varphi(const Parameters& p, double xi) noexcept {
    const double xi2 = xi * xi;
    return 1.0 + p.gamma1 * xi2 + p.delta1 * xi2 * xi2;
}

double symbol(const Parameters& p, SymbolKind kind, double xi) noexcept {
    const double den = varphi(p, xi);
    const double xi2 = xi * xi;
    switch (kind) {
        case SymbolKind::Phi: return xi * (1.0 - p.gamma2 * xi2 + p.delta2 * xi2 * xi2) / den;
        case SymbolKind::Psi: return xi / den;
        case SymbolKind::Tau: return xi * (3.0 - 4.0 * p.gamma * xi2) / (4.0 * den);
        case SymbolKind::Varphi: return den;
    }
    return 0.0;
}

double parse_coefficient(const std::string& text) {
    auto parse_number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a number: '" + text + "'");
        }
        if (used != s.size()) throw std::invalid_argument("not a number: '" + text + "'");
        return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) return parse_number(text);
    const double num = parse_number(text.substr(0, slash));
    const double den = parse_number(text.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return num / den;
}

}  // namespace gbbm
