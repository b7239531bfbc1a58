#include <ngpair/oracle.hpp>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <cmath>
#include <vector>

namespace ngpair::oracle {

namespace {

Memory to_memory(Opinion o) {
  switch (o) {
    case Opinion::A: return Memory::A;
    case Opinion::B: return Memory::B;
    case Opinion::AB: return Memory::AB;
    case Opinion::Committed: return Memory::C;
  }
  return Memory::A;
}

// State code: base-3 digits (A, B, AB) over the free nodes.
struct ChainLayout {
  std::vector<Memory> fixed;       // per node; C for committed, else unused
  std::vector<std::size_t> free;   // indices of non-committed nodes
  std::size_t states = 1;

  std::vector<Memory> decode(std::size_t code) const {
    std::vector<Memory> m = fixed;
    for (std::size_t v : free) {
      m[v] = static_cast<Memory>(code % 3);
      code /= 3;
    }
    return m;
  }
  std::size_t encode(const std::vector<Memory>& m) const {
    std::size_t code = 0, scale = 1;
    for (std::size_t v : free) {
      code += scale * static_cast<std::size_t>(m[v]);
      scale *= 3;
    }
    return code;
  }
};

}  // namespace

double exact_expected_consensus_time(std::span<const Opinion> init,
                                     double eta) {
  const std::size_t n = init.size();
  if (n < 2 || n > kMaxExactNodes)
    throw ParameterError("exact chain supports 2 <= n <= 8 nodes");
  if (!(eta > 0.5 && eta <= 1.0)) throw ParameterError("eta must lie in (1/2, 1]");

  ChainLayout layout;
  layout.fixed.assign(n, Memory::A);
  bool committed = false;
  for (std::size_t v = 0; v < n; ++v) {
    if (init[v] == Opinion::Committed) {
      layout.fixed[v] = Memory::C;
      committed = true;
    } else {
      layout.free.push_back(v);
      layout.states *= 3;
    }
  }

  const auto need =
      static_cast<std::size_t>(std::ceil(eta * static_cast<double>(n) - 1e-9));
  auto absorbed = [&](const std::vector<Memory>& m) {
    std::size_t a = 0, b = 0;
    for (Memory x : m) {
      if (x == Memory::A || x == Memory::C) ++a;
      if (x == Memory::B) ++b;
    }
    return a >= need || (!committed && b >= need);
  };

  std::vector<Memory> start(n);
  for (std::size_t v = 0; v < n; ++v) start[v] = to_memory(init[v]);
  if (absorbed(start)) return 0.0;

  // Index transient states.
  std::vector<long> index(layout.states, -1);
  long transient = 0;
  for (std::size_t code = 0; code < layout.states; ++code)
    if (!absorbed(layout.decode(code))) index[code] = transient++;

  // (I - P_TT) tau = 1, tau in interactions.
  const double pair_prob = 1.0 / static_cast<double>(n * (n - 1));
  std::vector<Eigen::Triplet<double>> entries;
  for (std::size_t code = 0; code < layout.states; ++code) {
    const long row = index[code];
    if (row < 0) continue;
    const auto m = layout.decode(code);
    double stay = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      const auto spoken = detail::words(m[s]);
      for (std::size_t l = 0; l < n; ++l) {
        if (l == s) continue;
        for (Memory word : spoken) {
          const double p = pair_prob / static_cast<double>(spoken.size());
          const Outcome out = communicate(m[s], m[l], word);
          auto next = m;
          next[s] = out.speaker;
          next[l] = out.listener;
          const long col = index[layout.encode(next)];
          if (col == row)
            stay += p;
          else if (col >= 0)
            entries.emplace_back(row, col, -p);
        }
      }
    }
    entries.emplace_back(row, row, 1.0 - stay);
  }

  Eigen::SparseMatrix<double> a(transient, transient);
  a.setFromTriplets(entries.begin(), entries.end());
  a.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("exact chain: singular first-passage system");
  const Eigen::VectorXd tau = lu.solve(Eigen::VectorXd::Ones(transient));
  return tau[index[layout.encode(start)]] / static_cast<double>(n);
}

}  // namespace ngpair::oracle
