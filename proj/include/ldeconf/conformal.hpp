#pragma once

#include <string_view>
#include <variant>

#include "jet.hpp"

namespace ldeconf {

// Catalog of conformal maps T : unit disc -> C with closed-form evaluation,
// inversion and boundary derivative modulus.
//
//   mobius       (a z + b)/(c z + d),  ad - bc != 0, pole off the open disc
//   stolz_petal  zeta (1 - (1 - z conj(zeta))^alpha),   0 < alpha < 1, |zeta| = 1
//   horodisc     zeta + (1 - |zeta|) z,                  0 < |zeta| < 1
//   sector       e^{i phi} ((1+z)/(1-z))^alpha,          0 < alpha < 2
//   strip        alpha e^{i phi} log((1+z)/(1-z)),       alpha > 0
//
// Fractional powers and logarithms are principal; each argument stays in a
// half-plane where the principal branch is analytic.

struct MobiusParams {
  cplx a, b, c, d;
};
struct StolzPetalParams {
  double alpha;
  cplx zeta;
};
struct HorodiscParams {
  cplx zeta;
};
struct SectorParams {
  double alpha;
  double phi;
};
struct StripParams {
  double alpha;
  double phi;
};

inline bool operator==(const MobiusParams& x, const MobiusParams& y) {
  return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}
inline bool operator==(const StolzPetalParams& x, const StolzPetalParams& y) {
  return x.alpha == y.alpha && x.zeta == y.zeta;
}
inline bool operator==(const HorodiscParams& x, const HorodiscParams& y) { return x.zeta == y.zeta; }
inline bool operator==(const SectorParams& x, const SectorParams& y) {
  return x.alpha == y.alpha && x.phi == y.phi;
}
inline bool operator==(const StripParams& x, const StripParams& y) {
  return x.alpha == y.alpha && x.phi == y.phi;
}

class ConformalMap {
 public:
  using Params = std::variant<MobiusParams, StolzPetalParams, HorodiscParams, SectorParams, StripParams>;

  static ConformalMap mobius(cplx a, cplx b, cplx c, cplx d) {
    cplx det = a * d - b * c;
    double scale = std::max({std::abs(a) * std::abs(d), std::abs(b) * std::abs(c), 1e-300});
    if (std::abs(det) <= 1e-14 * scale)
      throw std::invalid_argument("mobius: ad - bc vanishes");
    if (std::abs(d) < std::abs(c))
      throw std::invalid_argument("mobius: pole -d/c lies inside the unit disc");
    return ConformalMap(MobiusParams{a, b, c, d});
  }

  static ConformalMap stolz_petal(double alpha, cplx zeta) {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("stolz_petal: alpha must lie in (0, 1)");
    double m = std::abs(zeta);
    if (std::abs(m - 1.0) > 1e-9)
      throw std::invalid_argument("stolz_petal: zeta must be unimodular");
    return ConformalMap(StolzPetalParams{alpha, zeta / m});
  }

  static ConformalMap horodisc(cplx zeta) {
    double m = std::abs(zeta);
    if (!(m > 0.0 && m < 1.0))
      throw std::invalid_argument("horodisc: zeta must satisfy 0 < |zeta| < 1");
    return ConformalMap(HorodiscParams{zeta});
  }

  static ConformalMap sector(double alpha, double phi) {
    if (!(alpha > 0.0 && alpha < 2.0))
      throw std::invalid_argument("sector: alpha must lie in (0, 2)");
    return ConformalMap(SectorParams{alpha, phi});
  }

  static ConformalMap strip(double alpha, double phi) {
    if (!(alpha > 0.0)) throw std::invalid_argument("strip: alpha must be positive");
    return ConformalMap(StripParams{alpha, phi});
  }

  static ConformalMap identity() { return mobius(1.0, 0.0, 0.0, 1.0); }

  // (1 + z)/(1 - z): disc onto the right half-plane.
  static ConformalMap cayley() { return mobius(1.0, 1.0, -1.0, 1.0); }

  std::string_view kind() const {
    switch (params_.index()) {
      case 0: return "mobius";
      case 1: return "stolz_petal";
      case 2: return "horodisc";
      case 3: return "sector";
      default: return "strip";
    }
  }

  const Params& params() const { return params_; }

  cplx eval(cplx z) const {
    require_in_disc(z);
    return std::visit(
        [&](const auto& p) -> cplx {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, MobiusParams>) {
            return (p.a * z + p.b) / (p.c * z + p.d);
          } else if constexpr (std::is_same_v<P, StolzPetalParams>) {
            return p.zeta * (1.0 - std::pow(1.0 - z * std::conj(p.zeta), cplx(p.alpha)));
          } else if constexpr (std::is_same_v<P, HorodiscParams>) {
            return p.zeta + (1.0 - std::abs(p.zeta)) * z;
          } else if constexpr (std::is_same_v<P, SectorParams>) {
            return std::polar(1.0, p.phi) * std::pow((1.0 + z) / (1.0 - z), cplx(p.alpha));
          } else {
            return p.alpha * std::polar(1.0, p.phi) * std::log((1.0 + z) / (1.0 - z));
          }
        },
        params_);
  }

  cplx derivative(cplx z) const {
    require_in_disc(z);
    return std::visit(
        [&](const auto& p) -> cplx {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, MobiusParams>) {
            cplx den = p.c * z + p.d;
            return (p.a * p.d - p.b * p.c) / (den * den);
          } else if constexpr (std::is_same_v<P, StolzPetalParams>) {
            return p.alpha * std::pow(1.0 - z * std::conj(p.zeta), cplx(p.alpha - 1.0));
          } else if constexpr (std::is_same_v<P, HorodiscParams>) {
            return cplx(1.0 - std::abs(p.zeta));
          } else if constexpr (std::is_same_v<P, SectorParams>) {
            return 2.0 * p.alpha * std::polar(1.0, p.phi) *
                   std::pow(1.0 + z, cplx(p.alpha - 1.0)) / std::pow(1.0 - z, cplx(p.alpha + 1.0));
          } else {
            return 2.0 * p.alpha * std::polar(1.0, p.phi) / (1.0 - z * z);
          }
        },
        params_);
  }

  // Expansion of T about z, built from elementary jets so one code path
  // serves every kind.
  Jet jet(cplx z, int order) const {
    require_in_disc(z);
    Jet zv = Jet::variable(z, order);
    return std::visit(
        [&](const auto& p) -> Jet {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, MobiusParams>) {
            return (p.a * zv + p.b) / (p.c * zv + p.d);
          } else if constexpr (std::is_same_v<P, StolzPetalParams>) {
            Jet u = 1.0 - zv * std::conj(p.zeta);
            return p.zeta * (1.0 - pow(u, cplx(p.alpha)));
          } else if constexpr (std::is_same_v<P, HorodiscParams>) {
            return p.zeta + (1.0 - std::abs(p.zeta)) * zv;
          } else if constexpr (std::is_same_v<P, SectorParams>) {
            Jet u = (1.0 + zv) / (1.0 - zv);
            return std::polar(1.0, p.phi) * pow(u, cplx(p.alpha));
          } else {
            Jet u = (1.0 + zv) / (1.0 - zv);
            return (p.alpha * std::polar(1.0, p.phi)) * log(u);
          }
        },
        params_);
  }

  // The unique z in the disc with T(z) = w; rejects w outside the image by
  // the |z| < 1 test plus a round trip (which also catches branch slips).
  cplx inverse(cplx w) const {
    cplx z = inverse_raw(w);
    if (!(is_finite(z) && std::abs(z) < 1.0))
      throw std::domain_error("ConformalMap::inverse: point is not in the image of the disc");
    cplx back = eval(z);
    if (std::abs(back - w) > 1e-9 * (1.0 + std::abs(w)))
      throw std::domain_error("ConformalMap::inverse: point is not in the image of the disc");
    return z;
  }

  bool contains(cplx w) const {
    cplx z;
    try {
      z = inverse_raw(w);
    } catch (const std::exception&) {
      return false;
    }
    if (!(is_finite(z) && std::abs(z) < 1.0)) return false;
    return std::abs(eval(z) - w) <= 1e-9 * (1.0 + std::abs(w));
  }

  // |T'(T^{-1}(w))| from the per-kind closed form.
  double deriv_at_image(cplx w) const {
    cplx z = inverse(w);  // validates membership
    return std::visit(
        [&](const auto& p) -> double {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, MobiusParams>) {
            cplx den = p.c * z + p.d;
            return std::abs(p.a * p.d - p.b * p.c) / std::norm(den);
          } else if constexpr (std::is_same_v<P, StolzPetalParams>) {
            return p.alpha * std::pow(std::abs(p.zeta - w), 1.0 - 1.0 / p.alpha);
          } else if constexpr (std::is_same_v<P, HorodiscParams>) {
            return 1.0 - std::abs(p.zeta);
          } else if constexpr (std::is_same_v<P, SectorParams>) {
            cplx v = w * std::polar(1.0, -p.phi);
            cplx root = std::pow(v, cplx(1.0 / p.alpha));
            return 0.5 * p.alpha * std::pow(std::abs(v), 1.0 - 1.0 / p.alpha) * std::norm(root + 1.0);
          } else {
            cplx v = w * std::polar(1.0, -p.phi) / p.alpha;
            return 0.5 * p.alpha * std::exp(-v.real()) * std::norm(std::exp(v) + 1.0);
          }
        },
        params_);
  }

  cplx schwarzian(cplx z) const;

  friend bool operator==(const ConformalMap& x, const ConformalMap& y) {
    return x.params_ == y.params_;
  }

 private:
  explicit ConformalMap(Params p) : params_(std::move(p)) {}

  static void require_in_disc(cplx z) {
    if (!(std::abs(z) < 1.0))
      throw std::domain_error("ConformalMap: point is outside the open unit disc");
  }

  cplx inverse_raw(cplx w) const {
    return std::visit(
        [&](const auto& p) -> cplx {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, MobiusParams>) {
            return (p.d * w - p.b) / (p.a - p.c * w);
          } else if constexpr (std::is_same_v<P, StolzPetalParams>) {
            cplx q = 1.0 - w * std::conj(p.zeta);
            return p.zeta * (1.0 - std::pow(q, cplx(1.0 / p.alpha)));
          } else if constexpr (std::is_same_v<P, HorodiscParams>) {
            return (w - p.zeta) / (1.0 - std::abs(p.zeta));
          } else if constexpr (std::is_same_v<P, SectorParams>) {
            cplx u = std::pow(w * std::polar(1.0, -p.phi), cplx(1.0 / p.alpha));
            return (u - 1.0) / (u + 1.0);
          } else {
            cplx v = w * std::polar(1.0, -p.phi) / p.alpha;
            return std::tanh(0.5 * v);
          }
        },
        params_);
  }

  Params params_;
};

// S = T'''/T' - (3/2)(T''/T')^2 from an order->=3 jet of T.
inline cplx schwarzian_from_jet(const Jet& j) {
  if (j.order() < 3) throw std::invalid_argument("schwarzian_from_jet: jet order must be >= 3");
  cplx c1 = j.coeff(1), c2 = j.coeff(2), c3 = j.coeff(3);
  if (c1 == cplx(0.0)) throw std::invalid_argument("schwarzian_from_jet: vanishing first derivative");
  cplx r = c2 / c1;
  return 6.0 * c3 / c1 - 6.0 * r * r;
}

inline cplx ConformalMap::schwarzian(cplx z) const { return schwarzian_from_jet(jet(z, 3)); }

}  // namespace ldeconf
