#include "restress/tensor.hpp"

namespace restress {

SymTensor2 apply_stiffness(const SymTensor2& strain, const ElasticModel& m) {
  const double lambda = m.lame_lambda();
  const double two_mu = 2.0 * m.lame_mu();
  const double bulk = lambda * strain.trace();
  return {bulk + two_mu * strain.xx,
          bulk + two_mu * strain.yy,
          bulk + two_mu * strain.zz,
          two_mu * strain.xy,
          two_mu * strain.yz,
          two_mu * strain.xz};
}

SymTensor2 apply_compliance(const SymTensor2& stress, const ElasticModel& m) {
  const double E = m.youngs_modulus;
  const double nu = m.poisson_ratio;
  const double tr = stress.trace();
  return {((1.0 + nu) * stress.xx - nu * tr) / E,
          ((1.0 + nu) * stress.yy - nu * tr) / E,
          ((1.0 + nu) * stress.zz - nu * tr) / E,
          (1.0 + nu) * stress.xy / E,
          (1.0 + nu) * stress.yz / E,
          (1.0 + nu) * stress.xz / E};
}

}  // namespace restress
