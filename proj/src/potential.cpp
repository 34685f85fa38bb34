#include "zswkb/potential.hpp"

#include <cmath>

#include "json.hpp"

namespace zswkb {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_domain(const PotentialSpec& spec, cplx x) {
    if (!spec.analytic) {
        if (x.imag() != 0.0)
            throw NonAnalyticEvaluation("complex evaluation requested for " +
                                        to_string(spec.family));
        return;
    }
    if (!spec.in_domain(x))
        throw DomainError("x outside the declared analyticity domain");
}

// C4 bump: h (1 - t²)^5 on |t| <= 1, zero outside. Degree-10 pieces, the first
// four derivatives vanish at the support edge.
cplx bump_A(double h, double w, double x) {
    const double t = x / w;
    if (std::abs(t) >= 1.0) return 0.0;
    const double q = 1.0 - t * t;
    const double q2 = q * q;
    return h * q2 * q2 * q;
}

double bump_dA(double h, double w, double x) {
    const double t = x / w;
    if (std::abs(t) >= 1.0) return 0.0;
    const double q = 1.0 - t * t;
    const double q2 = q * q;
    return -10.0 * h * t * q2 * q2 / w;
}
}  // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::SechScaled: return "sech-scaled";
        case Family::Sech2xPhase: return "sech2x-phase";
        case Family::AlgebraicTail: return "algebraic-tail";
        case Family::GaussianTail: return "gaussian-tail";
        case Family::SplineBump: return "spline-bump";
    }
    return "?";
}

Family family_from_string(const std::string& s) {
    if (s == "sech-scaled") return Family::SechScaled;
    if (s == "sech2x-phase") return Family::Sech2xPhase;
    if (s == "algebraic-tail") return Family::AlgebraicTail;
    if (s == "gaussian-tail") return Family::GaussianTail;
    if (s == "spline-bump") return Family::SplineBump;
    throw ConfigError("unknown potential family: " + s);
}

PotentialSpec PotentialSpec::sech_scaled(double A0, double k) {
    if (A0 <= 0 || k <= 0) throw ConfigError("sech-scaled: amplitude and scale must be > 0");
    PotentialSpec s;
    s.family = Family::SechScaled;
    s.amplitude = A0;
    s.scale = k;
    s.decay_exponent = 1.0;  // tail ~ 2 A0 e^{-k x}: exponential class, sigma = 1
    s.analytic = true;
    s.decay_class = DecayClass::Exponential;
    s.symmetric = true;
    s.strip_height = 0.5 * kPi / k;  // first pole of sech(kx) at i pi/(2k)
    s.cone_tan = 1.0;
    return s;
}

PotentialSpec PotentialSpec::sech2x_phase() {
    PotentialSpec s = sech_scaled(1.0, 2.0);
    s.family = Family::Sech2xPhase;
    return s;
}

PotentialSpec PotentialSpec::algebraic_tail(double C, double d) {
    if (C <= 0 || d <= 1) throw ConfigError("algebraic-tail: need C > 0 and d > 1");
    PotentialSpec s;
    s.family = Family::AlgebraicTail;
    s.amplitude = C;
    s.decay_exponent = d;
    s.analytic = true;
    s.decay_class = DecayClass::Polynomial;
    s.symmetric = true;
    s.strip_height = 1.0;  // (1+x²) vanishes at ±i
    s.cone_tan = 1.0;
    return s;
}

PotentialSpec PotentialSpec::gaussian_tail(double C) {
    if (C <= 0) throw ConfigError("gaussian-tail: need C > 0");
    PotentialSpec s;
    s.family = Family::GaussianTail;
    s.amplitude = C;
    s.decay_exponent = 2.0;
    s.analytic = true;
    s.decay_class = DecayClass::Exponential;
    s.symmetric = true;
    s.strip_height = 1e100;  // entire
    s.cone_tan = 1e100;
    return s;
}

PotentialSpec PotentialSpec::spline_bump(double height, double half_width) {
    if (height <= 0 || half_width <= 0)
        throw ConfigError("spline-bump: need height > 0 and half_width > 0");
    PotentialSpec s;
    s.family = Family::SplineBump;
    s.amplitude = height;
    s.scale = half_width;
    s.analytic = false;
    s.decay_class = DecayClass::CompactSmooth;
    s.symmetric = true;
    s.strip_height = 0;
    return s;
}

bool PotentialSpec::in_domain(cplx x) const {
    if (!analytic) return x.imag() == 0.0;
    const double lim = std::max(strip_height, cone_tan * std::abs(x.real()));
    return std::abs(x.imag()) < lim;
}

std::vector<cplx> PotentialSpec::singularities(const Rect& box) const {
    std::vector<cplx> out;
    auto push_if = [&](cplx p) {
        if (box.contains(p)) out.push_back(p);
    };
    switch (family) {
        case Family::SechScaled:
        case Family::Sech2xPhase: {
            // poles of sech(kx) at x = i pi (n + 1/2) / k, on the imaginary axis
            const double k = scale;
            for (int n = -40; n <= 40; ++n)
                push_if(cplx{0.0, kPi * (n + 0.5) / k});
            break;
        }
        case Family::AlgebraicTail:
            push_if(cplx{0.0, 1.0});
            push_if(cplx{0.0, -1.0});
            break;
        case Family::GaussianTail:
        case Family::SplineBump:
            break;
    }
    return out;
}

cplx eval_A(const PotentialSpec& spec, cplx x) {
    check_domain(spec, x);
    switch (spec.family) {
        case Family::SechScaled:
        case Family::Sech2xPhase:
            return spec.amplitude / std::cosh(spec.scale * x);
        case Family::AlgebraicTail:
            return spec.amplitude * std::pow(1.0 + x * x, -0.5 * spec.decay_exponent);
        case Family::GaussianTail:
            return spec.amplitude * std::exp(-x * x);
        case Family::SplineBump:
            return bump_A(spec.amplitude, spec.scale, x.real());
    }
    return 0;
}

cplx eval_S(const PotentialSpec& spec, cplx x) {
    if (spec.family != Family::Sech2xPhase) return 0.0;
    check_domain(spec, x);
    return 1.0 / std::cosh(2.0 * x);
}

Derivs eval_derivs(const PotentialSpec& spec, cplx x) {
    check_domain(spec, x);
    Derivs d{0, 0, 0, 0};
    switch (spec.family) {
        case Family::SechScaled: {
            const double k = spec.scale;
            const cplx sech = 1.0 / std::cosh(k * x);
            const cplx tanh = std::tanh(k * x);
            d.A = spec.amplitude * sech;
            d.dA = -spec.amplitude * k * sech * tanh;
            break;
        }
        case Family::Sech2xPhase: {
            const cplx sech = 1.0 / std::cosh(2.0 * x);
            const cplx tanh = std::tanh(2.0 * x);
            d.A = sech;
            d.dA = -2.0 * sech * tanh;
            d.Sp = d.dA;  // S = A for this family
            d.Spp = 4.0 * sech * (tanh * tanh - sech * sech);
            break;
        }
        case Family::AlgebraicTail: {
            const double dd = spec.decay_exponent;
            const cplx base = 1.0 + x * x;
            d.A = spec.amplitude * std::pow(base, -0.5 * dd);
            d.dA = -spec.amplitude * dd * x * std::pow(base, -0.5 * dd - 1.0);
            break;
        }
        case Family::GaussianTail: {
            d.A = spec.amplitude * std::exp(-x * x);
            d.dA = -2.0 * x * d.A;
            break;
        }
        case Family::SplineBump: {
            d.A = bump_A(spec.amplitude, spec.scale, x.real());
            d.dA = bump_dA(spec.amplitude, spec.scale, x.real());
            break;
        }
    }
    return d;
}

DecayScales decay_scales(const PotentialSpec& spec, double lambda, double mu) {
    if (spec.decay_class == DecayClass::CompactSmooth)
        throw UnsupportedDecayClass("decay scales undefined for compact-smooth data");
    if (!(lambda > 0 && lambda < spec.a_max()) || !(mu > 0 && mu < spec.a_max()))
        throw DomainError("decay_scales: need λ, μ in (0, A_max)");
    const double c = spec.decay_constant_c;
    DecayScales out{};
    if (spec.decay_class == DecayClass::Polynomial) {
        const double d = spec.decay_exponent;
        out.a_scale = c * lambda;
        out.b_scale = c * std::pow(mu, 1.0 + 1.0 / (2.0 * d));
    } else {
        if (lambda >= 1.0 || mu >= 1.0)
            throw DomainError("decay_scales: exponential-class formulas need λ, μ < 1");
        const double sigma = spec.decay_exponent;
        out.a_scale = c * lambda / std::log(1.0 / lambda);
        out.b_scale = c * mu * std::pow(std::log(1.0 / mu), -1.0 + 1.0 / sigma);
    }
    return out;
}

double tail_integral(const PotentialSpec& spec, double X) {
    if (X <= 0) throw DomainError("tail_integral: X must be positive");
    switch (spec.family) {
        case Family::SechScaled: {
            // ∫_X^∞ A0 sech(kx) dx = (2 A0 / k) atan(e^{-kX})
            return 2.0 * spec.amplitude / spec.scale * std::atan(std::exp(-spec.scale * X));
        }
        case Family::Sech2xPhase: {
            // A part plus |S'|/2 = -S'/2 for x > 0: total = A-tail + S(X)/2
            const double a_part = std::atan(std::exp(-2.0 * X));
            const double s_part = 0.5 / std::cosh(2.0 * X);
            return a_part + s_part;
        }
        case Family::AlgebraicTail: {
            // A ≤ C x^{-d}
            const double d = spec.decay_exponent;
            return spec.amplitude * std::pow(X, 1.0 - d) / (d - 1.0);
        }
        case Family::GaussianTail:
            return spec.amplitude * std::exp(-X * X) / (2.0 * X);
        case Family::SplineBump:
            return X >= spec.scale ? 0.0 : spec.amplitude * (spec.scale - X);
    }
    return 0;
}

std::string PotentialSpec::to_json() const {
    nlohmann::ordered_json j;
    j["family"] = to_string(family);
    nlohmann::ordered_json p;
    switch (family) {
        case Family::SechScaled:
            p["amplitude"] = amplitude;
            p["scale"] = scale;
            break;
        case Family::Sech2xPhase:
            break;
        case Family::AlgebraicTail:
            p["amplitude"] = amplitude;
            p["d"] = decay_exponent;
            break;
        case Family::GaussianTail:
            p["amplitude"] = amplitude;
            break;
        case Family::SplineBump:
            p["height"] = amplitude;
            p["half_width"] = scale;
            break;
    }
    if (decay_constant_c != 1.0) p["c"] = decay_constant_c;
    j["params"] = p;
    return j.dump();
}

PotentialSpec PotentialSpec::from_json(const std::string& js) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(js);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("potential JSON parse error: ") + e.what());
    }
    if (!j.contains("family")) throw ConfigError("potential JSON: missing \"family\"");
    const Family fam = family_from_string(j["family"].get<std::string>());
    const auto p = j.value("params", nlohmann::json::object());
    auto get = [&](const char* key, double def) { return p.value(key, def); };
    PotentialSpec s;
    switch (fam) {
        case Family::SechScaled:
            s = sech_scaled(get("amplitude", 1.0), get("scale", 1.0));
            break;
        case Family::Sech2xPhase:
            s = sech2x_phase();
            break;
        case Family::AlgebraicTail:
            s = algebraic_tail(get("amplitude", 1.0), get("d", 2.0));
            break;
        case Family::GaussianTail:
            s = gaussian_tail(get("amplitude", 1.0));
            break;
        case Family::SplineBump:
            s = spline_bump(get("height", 1.0), get("half_width", 3.0));
            break;
    }
    s.decay_constant_c = get("c", 1.0);
    return s;
}

}  // namespace zswkb
