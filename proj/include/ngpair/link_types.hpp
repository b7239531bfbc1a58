#pragma once

#include <Eigen/Core>

#include <array>
#include <string_view>

namespace ngpair {

template <typename Scalar, int Rows>
using Vector = Eigen::Matrix<Scalar, Rows, 1>;
template <typename Scalar, int Rows, int Cols>
using Matrix = Eigen::Matrix<Scalar, Rows, Cols>;

// Link-type slots of the symmetric macrostate.
namespace sym {
enum Link : int { AA = 0, AB, A_AB, BB, B_AB, AB_AB, kLinks };
// Neighbor slots of an effective field.
enum Neighbor : int { A = 0, B, MIX, kNeighbors };
inline constexpr std::array<std::string_view, kLinks> kLinkNames = {
    "l_AA", "l_AB", "l_A_AB", "l_BB", "l_B_AB", "l_AB_AB"};
}  // namespace sym

// Link-type slots of the committed macrostate. C is the committed-A agent;
// the C-C bucket is carried separately since it never changes.
namespace com {
enum Link : int {
  AC = 0, BC, ABC, AA, AB, A_AB, BB, B_AB, AB_AB, kLinks
};
enum Neighbor : int { C = 0, A, B, MIX, kNeighbors };
inline constexpr std::array<std::string_view, kLinks> kLinkNames = {
    "l_AC", "l_BC", "l_AB_C", "l_AA", "l_AB",
    "l_A_AB", "l_BB", "l_B_AB", "l_AB_AB"};
}  // namespace com

// Node-fraction slots; in the committed case slot A includes committed mass.
enum NodeSlot : int { kPA = 0, kPB, kPAB };

/// Which opinion may count as consensus. With committed agents only the
/// committed opinion A is a target; otherwise either A or B.
enum class ConsensusTarget { either, a_only };

template <typename Scalar>
using Vector6 = Vector<Scalar, 6>;
template <typename Scalar>
using Vector9 = Vector<Scalar, 9>;
template <typename Scalar>
using Fractions = Vector<Scalar, 3>;

using LinkState6 = Vector6<double>;
using LinkState9 = Vector9<double>;
using NodeFractions = Fractions<double>;

/// Committed-case link state: the nine tracked fractions plus the inert C-C
/// share. Tracked entries sum to 1 - cc.
struct CommittedLinkState {
  LinkState9 l = LinkState9::Zero();
  double cc = 0.0;
};

}  // namespace ngpair
