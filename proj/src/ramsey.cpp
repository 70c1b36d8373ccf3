#include "stratus/ramsey.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>

#include "stratus/errors.hpp"

namespace stratus {

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * static_cast<std::uint64_t>(n - i) / (i + 1);
  return r;
}

// Subsets come out in lexicographic order as sorted vectors.
bool next_index_combination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<int> first_index_combination(int k) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  return idx;
}

void check_pool(const std::vector<int>& pool, int n) {
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool[i] < 0 || pool[i] >= n) throw InputError("pool element out of range");
    if (i > 0 && pool[i] <= pool[i - 1])
      throw InputError("pool must be strictly increasing");
  }
}

void check_free_vars(const std::vector<FormulaPtr>& formulas, int k) {
  for (const FormulaPtr& f : formulas) {
    for (const VarName& v : free_variables(*f)) {
      bool ok = false;
      if (v.disamb == 0 && v.id.size() >= 2 && v.id[0] == 'x') {
        bool digits = true;
        for (std::size_t i = 1; i < v.id.size(); ++i)
          if (!std::isdigit(static_cast<unsigned char>(v.id[i]))) digits = false;
        if (digits) {
          int idx = std::stoi(v.id.substr(1));
          ok = idx >= 1 && idx <= k;
        }
      }
      if (!ok)
        throw InputError("free variable '" + v.str() + "' is not among x1..x" +
                         std::to_string(k));
    }
  }
}

Env tuple_env(const std::vector<int>& tuple) {
  Env env;
  for (std::size_t i = 0; i < tuple.size(); ++i)
    env[VarName{"x" + std::to_string(i + 1), 0}] = tuple[i];
  return env;
}

}  // namespace

long long Coloring::color_of(const std::vector<int>& subset) const {
  auto it = assignment.find(subset);
  if (it == assignment.end()) throw InputError("coloring has no entry for the given subset");
  return it->second;
}

void Coloring::check() const {
  if (n < 0 || k < 0 || c < 1) throw InputError("coloring parameters out of range");
  std::uint64_t expect = binomial(n, k);
  if (assignment.size() != expect)
    throw InputError("coloring is not total on the k-subsets");
  for (const auto& [subset, color] : assignment) {
    if (static_cast<int>(subset.size()) != k)
      throw InputError("coloring key of the wrong size");
    for (std::size_t i = 0; i < subset.size(); ++i) {
      if (subset[i] < 0 || subset[i] >= n) throw InputError("coloring key out of range");
      if (i > 0 && subset[i] <= subset[i - 1])
        throw InputError("coloring keys must be strictly increasing");
    }
    if (color < 0 || color >= c) throw InputError("color out of range");
  }
}

Coloring coloring_from_function(
    int n, int k, long long c,
    const std::function<long long(const std::vector<int>&)>& fn) {
  Coloring col{n, k, c, {}};
  if (k <= n && k >= 0) {
    std::vector<int> idx = first_index_combination(k);
    if (k == 0) {
      col.assignment[{}] = fn({});
    } else if (n > 0) {
      do {
        col.assignment[idx] = fn(idx);
      } while (next_index_combination(idx, n));
    }
  }
  col.check();
  return col;
}

std::optional<HomogeneousWitness> homogeneous(const Coloring& col, int m,
                                              const std::vector<int>& pool) {
  check_pool(pool, col.n);
  if (m < 0 || m > static_cast<int>(pool.size())) return std::nullopt;
  std::vector<int> idx = first_index_combination(m);
  auto candidate = [&](const std::vector<int>& positions) {
    std::vector<int> subset(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) subset[i] = pool[positions[i]];
    return subset;
  };
  do {
    std::vector<int> subset = candidate(idx);
    if (col.k > m) return HomogeneousWitness{subset, 0};  // no k-subsets to disagree
    bool first = true;
    long long color = 0;
    bool ok = true;
    std::vector<int> kidx = first_index_combination(col.k);
    do {
      std::vector<int> ktuple(col.k);
      for (int i = 0; i < col.k; ++i) ktuple[i] = subset[kidx[i]];
      long long got = col.color_of(ktuple);
      if (first) {
        color = got;
        first = false;
      } else if (got != color) {
        ok = false;
        break;
      }
    } while (next_index_combination(kidx, m));
    if (ok) return HomogeneousWitness{subset, first ? 0 : color};
  } while (next_index_combination(idx, static_cast<int>(pool.size())));
  return std::nullopt;
}

std::optional<HomogeneousWitness> homogeneous(const Coloring& col, int m) {
  std::vector<int> pool(col.n);
  for (int i = 0; i < col.n; ++i) pool[i] = i;
  return homogeneous(col, m, pool);
}

bool verify_homogeneous(const Coloring& col, const std::vector<int>& subset) {
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 0 || subset[i] >= col.n) return false;
    if (i > 0 && subset[i] <= subset[i - 1]) return false;
  }
  if (col.k > static_cast<int>(subset.size())) return true;
  std::vector<long long> colors;
  std::vector<int> kidx = first_index_combination(col.k);
  do {
    std::vector<int> ktuple(col.k);
    for (int i = 0; i < col.k; ++i) ktuple[i] = subset[kidx[i]];
    colors.push_back(col.color_of(ktuple));
  } while (next_index_combination(kidx, static_cast<int>(subset.size())));
  return std::adjacent_find(colors.begin(), colors.end(), std::not_equal_to<>()) ==
         colors.end();
}

RamseyCheck exhaustive_ramsey_check(int n, int k, long long c, int m, std::uint64_t budget) {
  if (n < 0 || k < 0 || m < 0 || c < 1) throw InputError("parameters out of range");

  std::vector<std::vector<int>> ksubsets;
  if (k <= n) {
    if (k == 0) {
      ksubsets.push_back({});
    } else if (n > 0) {
      std::vector<int> idx = first_index_combination(k);
      do {
        ksubsets.push_back(idx);
      } while (next_index_combination(idx, n));
    }
  }
  std::map<std::vector<int>, std::size_t> rank;
  for (std::size_t i = 0; i < ksubsets.size(); ++i) rank[ksubsets[i]] = i;

  // Each m-subset as the ranks of its k-subsets.
  std::vector<std::vector<std::size_t>> msets;
  if (m <= n) {
    if (m == 0) {
      msets.push_back({});
    } else if (n > 0) {
      std::vector<int> idx = first_index_combination(m);
      do {
        std::vector<std::size_t> ranks;
        if (k <= m) {
          std::vector<int> kidx = first_index_combination(k);
          if (k == 0) {
            ranks.push_back(rank.at({}));
          } else {
            do {
              std::vector<int> ktuple(k);
              for (int i = 0; i < k; ++i) ktuple[i] = idx[kidx[i]];
              ranks.push_back(rank.at(ktuple));
            } while (next_index_combination(kidx, m));
          }
        }
        msets.push_back(std::move(ranks));
      } while (next_index_combination(idx, n));
    }
  }

  std::uint64_t total = 1;
  for (std::size_t i = 0; i < ksubsets.size(); ++i) {
    if (total > budget / static_cast<std::uint64_t>(c) + 1) {
      total = budget + 1;
      break;
    }
    total *= static_cast<std::uint64_t>(c);
  }
  if (total > budget)
    throw BudgetError("exhaustive check needs more colorings than the budget allows");

  std::vector<long long> digits(ksubsets.size(), 0);
  std::uint64_t checked = 0;
  while (true) {
    ++checked;
    bool found = false;
    for (const auto& ranks : msets) {
      bool homog = true;
      for (std::size_t i = 1; i < ranks.size(); ++i) {
        if (digits[ranks[i]] != digits[ranks[0]]) {
          homog = false;
          break;
        }
      }
      if (homog) {
        found = true;
        break;
      }
    }
    if (!found) {
      Coloring cex{n, k, c, {}};
      for (std::size_t i = 0; i < ksubsets.size(); ++i) cex.assignment[ksubsets[i]] = digits[i];
      return RamseyCheck{false, checked, std::move(cex)};
    }
    std::size_t pos = 0;
    while (pos < digits.size() && digits[pos] == c - 1) {
      digits[pos] = 0;
      ++pos;
    }
    if (pos == digits.size()) break;
    ++digits[pos];
  }
  return RamseyCheck{true, checked, std::nullopt};
}

Coloring truth_coloring(const FiniteStructure& s, const std::vector<FormulaPtr>& formulas,
                        int k) {
  if (k < 0) throw InputError("tuple size must be non-negative");
  if (formulas.size() > 62) throw InputError("too many formulas for a bitmask coloring");
  check_free_vars(formulas, k);
  long long c = 1LL << formulas.size();
  return coloring_from_function(s.size, k, c, [&](const std::vector<int>& subset) {
    Env env = tuple_env(subset);
    long long color = 0;
    for (std::size_t i = 0; i < formulas.size(); ++i)
      if (eval(s, *formulas[i], env)) color |= 1LL << i;
    return color;
  });
}

std::optional<std::vector<int>> extract_indiscernibles(const FiniteStructure& s,
                                                       const std::vector<FormulaPtr>& formulas,
                                                       int k, int count) {
  Coloring col = truth_coloring(s, formulas, k);
  auto witness = homogeneous(col, count);
  if (!witness) return std::nullopt;
  if (!verify_indiscernibles(s, formulas, k, witness->subset))
    throw Error("homogeneous subset failed independent re-evaluation");
  return witness->subset;
}

bool verify_indiscernibles(const FiniteStructure& s, const std::vector<FormulaPtr>& formulas,
                           int k, const std::vector<int>& seq) {
  check_free_vars(formulas, k);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] < 0 || seq[i] >= s.size) return false;
    if (i > 0 && seq[i] <= seq[i - 1]) return false;
  }
  if (k > static_cast<int>(seq.size())) return true;
  std::vector<bool> reference;
  bool first = true;
  std::vector<int> kidx = first_index_combination(k);
  do {
    std::vector<int> tuple(k);
    for (int i = 0; i < k; ++i) tuple[i] = seq[kidx[i]];
    Env env = tuple_env(tuple);
    std::vector<bool> truths;
    truths.reserve(formulas.size());
    for (const FormulaPtr& f : formulas) truths.push_back(eval(s, *f, env));
    if (first) {
      reference = truths;
      first = false;
    } else if (truths != reference) {
      return false;
    }
  } while (next_index_combination(kidx, static_cast<int>(seq.size())));
  return true;
}

std::optional<TermStabilization> stabilize_terms(const FiniteStructure& s,
                                                 const std::vector<std::string>& terms, int z,
                                                 int m, const std::vector<int>& pool) {
  if (terms.empty()) throw InputError("at least one term is required");
  if (z < 0 || z >= s.size) throw InputError("threshold must be a universe element");
  int arity = -1;
  for (const std::string& t : terms) {
    auto it = s.functions.find(t);
    if (it == s.functions.end())
      throw InputError("structure does not interpret function '" + t + "'");
    if (arity == -1)
      arity = it->second.arity;
    else if (arity != it->second.arity)
      throw InputError("terms must share one arity");
  }
  if (arity < 1) throw InputError("terms must have arity at least 1");

  // Color by the tuple of clipped term values, encoded base z+1.
  long long base = z + 1;
  long long c = 1;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (c > (std::numeric_limits<long long>::max() / base))
      throw InputError("too many term/threshold combinations to encode");
    c *= base;
  }
  Coloring col = coloring_from_function(s.size, arity, c, [&](const std::vector<int>& tuple) {
    long long color = 0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      int value = apply_function(s, *it, tuple);
      long long clipped = value < z ? value : z;
      color = color * base + clipped;
    }
    return color;
  });
  auto witness = homogeneous(col, m, pool);
  if (!witness) return std::nullopt;
  TermStabilization out;
  out.subset = witness->subset;
  long long color = witness->color;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    out.values.push_back(color % base);
    color /= base;
  }
  return out;
}

std::optional<TermStabilization> stabilize_terms(const FiniteStructure& s,
                                                 const std::vector<std::string>& terms, int z,
                                                 int m) {
  std::vector<int> pool(s.size);
  for (int i = 0; i < s.size; ++i) pool[i] = i;
  return stabilize_terms(s, terms, z, m, pool);
}

}  // namespace stratus
