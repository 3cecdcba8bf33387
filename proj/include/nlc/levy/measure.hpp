#pragma once

#include <array>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "nlc/core/grid.hpp"
#include "nlc/levy/radial_profile.hpp"

namespace nlc::levy {

enum class MeasureKind { StableRadial, BernsteinSubordinated, RadialAngularDensity, Difference };

std::string to_string(MeasureKind k);

using Vec = std::array<double, 3>;

struct AngularAtom {
  Vec direction{1.0, 0.0, 0.0};
  double weight = 1.0;
};

// Quasi-uniform discretisation of surface measure on S^{d-1}: +-e_i for
// d = 1, 2 and the 26 cube directions for d = 3. Weights sum to |S^{d-1}|.
std::vector<AngularAtom> sphere_design(int d);

// Angular modulation a(r, atom) evaluated in the measure's base coordinates.
using AngularFactor = std::function<double(double r, std::size_t atom)>;

// Regime of the compensator: none, unit ball, or full.
double compensator(double sigma, double r);

class LevyMeasure {
 public:
  static LevyMeasure stable(int d, double sigma, double coefficient = 1.0,
                            std::vector<AngularAtom> atoms = {});
  static LevyMeasure radial(MeasureKind kind, int d, double sigma,
                            std::shared_ptr<const RadialProfile> profile,
                            std::vector<AngularAtom> atoms = {},
                            std::shared_ptr<const AngularFactor> factor = nullptr,
                            std::string factor_tag = "");
  // pi = plus - minus, stored as a signed pair.
  static LevyMeasure difference(const LevyMeasure& plus, const LevyMeasure& minus);

  MeasureKind kind() const { return kind_; }
  int dim() const { return d_; }
  double sigma() const { return sigma_; }
  const std::vector<AngularAtom>& atoms() const { return atoms_; }
  bool is_difference() const { return kind_ == MeasureKind::Difference; }
  const LevyMeasure& plus() const { return *plus_; }
  const LevyMeasure& minus() const { return *minus_; }
  double radial_cutoff() const { return cutoff_; }
  double scale() const { return scale_; }
  double multiplier() const { return mult_; }
  const RadialProfile& profile() const { return *profile_; }
  bool has_angular_factor() const { return static_cast<bool>(factor_); }

  // Density of the radial law along atom i (weight not included).
  double density(double r, std::size_t atom) const;
  double density_log_slope(double r, std::size_t atom) const;

  // kappa_R * pi(R dy) with the given prefactor; rescales the radial variable.
  LevyMeasure rescaled(double R, double prefactor) const;
  // Restriction to {|y| <= cutoff}.
  LevyMeasure truncated(double cutoff) const;
  LevyMeasure with_coefficient(double factor) const;

  // Characteristic exponent at xi: int [e^{i2pi xi.y} - 1 - i2pi chi(y) xi.y] dpi.
  cplx symbol(const Vec& xi) const;
  // Exponent contribution of one atom at u = xi . w (weight not included).
  cplx atom_exponent(std::size_t atom, double u) const;

  // Sum_i s_i int_a^b g(r) density_i(r) dr for a radial weight g.
  double radial_moment(const std::function<double(double)>& g, double a, double b) const;
  // Same, per atom.
  double atom_moment(std::size_t atom, const std::function<double(double)>& g, double a,
                     double b) const;

  // Mass of {|y| > eps} and the moment int_{|y|<=eps} |y|^k dpi.
  double tail_mass(double eps) const;

  bool angular_symmetric(double tol = 1e-12) const;
  std::string fingerprint() const;

 private:
  LevyMeasure() = default;

  MeasureKind kind_ = MeasureKind::StableRadial;
  int d_ = 1;
  double sigma_ = 1.0;
  std::vector<AngularAtom> atoms_;
  std::shared_ptr<const RadialProfile> profile_;
  std::shared_ptr<const AngularFactor> factor_;
  std::string factor_tag_;
  double scale_ = 1.0;
  double mult_ = 1.0;
  double cutoff_ = std::numeric_limits<double>::infinity();
  std::shared_ptr<const LevyMeasure> plus_;
  std::shared_ptr<const LevyMeasure> minus_;
};

}  // namespace nlc::levy
