#include "gravswap/schmidt.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace gravswap {

SchmidtResult schmidt_entropy(const GridWavefunction& psi) {
  if (psi.frame != Frame::Lab) throw std::invalid_argument("schmidt_entropy: grid must be in the lab frame");
  const int n = psi.spec.points;
  using Matrix = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Matrix m = Eigen::Map<const Matrix>(psi.amplitudes.data(), n, n) * psi.spec.spacing();

  Eigen::BDCSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  double total = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) total += s[i] * s[i];

  SchmidtResult r;
  r.purity = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double q = s[i] * s[i] / total;
    r.spectrum.push_back(q);
    r.purity += q * q;
    if (q > 0.0) r.entropy -= q * std::log(q);
  }
  return r;
}

}  // namespace gravswap
