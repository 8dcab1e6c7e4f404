#pragma once
// Piecewise step / piecewise linear functions on [a, b] with real or complex
// values.  The stored value sequence is the discrete carrier for the variation
// and sup computations: step pieces attain every value of f, and piecewise
// linear extrema sit at nodes, so suprema over real partitions are realized on
// the stored values.

#include <complex>
#include <string>
#include <vector>

namespace tauberlab {

using cplx = std::complex<double>;

struct PiecewiseFunction {
  enum class Kind { step, linear };

  Kind kind = Kind::step;
  // Strictly increasing; the domain is [nodes.front(), nodes.back()].
  std::vector<double> nodes;
  // step: one value per piece (nodes.size() - 1); linear: one value per node.
  std::vector<cplx> values;

  static PiecewiseFunction make_step(std::vector<double> nodes, std::vector<cplx> values);
  static PiecewiseFunction make_linear(std::vector<double> nodes, std::vector<cplx> values);

  double a() const { return nodes.front(); }
  double b() const { return nodes.back(); }

  // Step evaluation is right-continuous; f(b) takes the last piece's value.
  cplx eval(double t) const;

  bool is_real() const;
  double sup_abs() const;

  // Real/imaginary part with the same shape.
  PiecewiseFunction real_part() const;
  PiecewiseFunction imag_part() const;

  // Throws std::invalid_argument on any structural violation.
  void validate() const;

  // {"kind":"step"|"linear","nodes":[...],"values":[...],"domain":[a,b]};
  // complex values serialize as [re, im] pairs.
  std::string to_json() const;
  static PiecewiseFunction from_json(const std::string& text);
};

}  // namespace tauberlab
