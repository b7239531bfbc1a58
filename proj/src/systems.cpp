#include <ngpair/integrator.hpp>

namespace ngpair {

OdeSystem<6> pair_system6(double k_avg) {
  detail::require_degree(k_avg);
  OdeSystem<6> sys;
  sys.rhs = [k_avg](const LinkState6& l) { return rhs6<double>(l, k_avg); };
  sys.projection = node_projection6<double>();
  sys.mass = 1.0;
  return sys;
}

OdeSystem<9> pair_system9(double k_avg, double cc) {
  detail::require_degree(k_avg);
  if (!(cc >= 0.0 && cc < 1.0)) throw ParameterError("l_CC must lie in [0, 1)");
  OdeSystem<9> sys;
  sys.rhs = [k_avg](const LinkState9& l) { return rhs9<double>(l, k_avg); };
  sys.projection = node_projection9<double>();
  sys.offset = NodeFractions(cc, 0.0, 0.0);
  sys.mass = 1.0 - cc;
  return sys;
}

OdeSystem<3> meanfield_system(double committed) {
  if (!(committed >= 0.0 && committed < 1.0))
    throw ParameterError("committed fraction must lie in [0, 1)");
  OdeSystem<3> sys;
  sys.rhs = [committed](const NodeFractions& p) {
    return rhs_meanfield<double>(p, committed);
  };
  sys.projection = Eigen::Matrix3d::Identity();
  sys.mass = 1.0;
  return sys;
}

}  // namespace ngpair
