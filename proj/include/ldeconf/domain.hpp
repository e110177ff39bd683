#pragma once

#include <memory>
#include <optional>

#include "conformal.hpp"

namespace ldeconf {

// Where an analytic function lives: the open unit disc, the open right
// half-plane, or the image T(disc) of a catalog map.
class Domain {
 public:
  enum class Kind { disc, right_half_plane, map_image };

  static Domain disc() { return Domain(Kind::disc, std::nullopt); }
  static Domain right_half_plane() { return Domain(Kind::right_half_plane, std::nullopt); }
  static Domain image(ConformalMap map) { return Domain(Kind::map_image, std::move(map)); }

  Kind kind() const { return kind_; }

  const ConformalMap& map() const {
    if (!map_) throw std::logic_error("Domain::map: not an image domain");
    return *map_;
  }

  bool contains(cplx w) const {
    switch (kind_) {
      case Kind::disc: return std::abs(w) < 1.0;
      case Kind::right_half_plane: return w.real() > 0.0;
      default: return map_->contains(w);
    }
  }

  // Lower bound on the Euclidean distance from w to the boundary.  For map
  // images this is the Koebe quarter bound |T'(z)| (1 - |z|) / 4.
  double boundary_clearance(cplx w) const {
    switch (kind_) {
      case Kind::disc: return 1.0 - std::abs(w);
      case Kind::right_half_plane: return w.real();
      default: {
        cplx z = map_->inverse(w);
        return 0.25 * std::abs(map_->derivative(z)) * (1.0 - std::abs(z));
      }
    }
  }

  friend bool operator==(const Domain& x, const Domain& y) {
    if (x.kind_ != y.kind_) return false;
    if (x.kind_ != Kind::map_image) return true;
    return *x.map_ == *y.map_;
  }

 private:
  Domain(Kind k, std::optional<ConformalMap> m) : kind_(k), map_(std::move(m)) {}

  Kind kind_;
  std::optional<ConformalMap> map_;
};

}  // namespace ldeconf
