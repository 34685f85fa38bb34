#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zswkb {

using cplx = std::complex<double>;
using State2 = std::array<cplx, 2>;

inline constexpr cplx I{0.0, 1.0};

/// Wronskian of two 2-vectors, W(u,v) = u1*v2 - u2*v1.
inline cplx wronskian(const State2& u, const State2& v) {
    return u[0] * v[1] - u[1] * v[0];
}

inline double norm2(const State2& u) {
    return std::sqrt(std::norm(u[0]) + std::norm(u[1]));
}

/// Axis-aligned rectangle, used both in the λ-plane and the x-plane.
struct Rect {
    double re0 = 0, re1 = 0, im0 = 0, im1 = 0;
    bool contains(cplx z, double margin = 0.0) const {
        return z.real() >= re0 - margin && z.real() <= re1 + margin &&
               z.imag() >= im0 - margin && z.imag() <= im1 + margin;
    }
    double width() const { return re1 - re0; }
    double height() const { return im1 - im0; }
    cplx center() const { return {0.5 * (re0 + re1), 0.5 * (im0 + im1)}; }
};

enum class EvMethod { Direct, BSReal, BSArc, ExactWKB };

std::string to_string(EvMethod m);

/// One located or predicted eigenvalue with its provenance.
struct EigenvalueRecord {
    cplx lambda;
    int n = -1;  // quantization index, -1 when not applicable
    double epsilon = 0;
    EvMethod method = EvMethod::Direct;
    std::optional<cplx> norming;
    std::map<std::string, double> diag;
};

enum class PathRole { CMinus, CZero, CPlus, Stokes, Generic };

/// Oriented polyline in the complex x-plane.
struct ContourPath {
    std::vector<cplx> points;
    PathRole role = PathRole::Generic;
    cplx lambda;

    double length() const {
        double s = 0;
        for (size_t i = 1; i < points.size(); ++i) s += std::abs(points[i] - points[i - 1]);
        return s;
    }
    cplx front() const { return points.front(); }
    cplx back() const { return points.back(); }
};

}  // namespace zswkb
