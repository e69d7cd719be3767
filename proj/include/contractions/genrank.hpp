#ifndef CONTRACTIONS_GENRANK_HPP_
#define CONTRACTIONS_GENRANK_HPP_

// Closures, Rees quotient products, factorization words, and the exact
// minimum-generating-set search that produces rank certificates.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "error.hpp"
#include "families.hpp"
#include "product_table.hpp"
#include "transformation.hpp"

namespace contractions {

  namespace detail {
    inline std::size_t common_degree(std::span<Transformation const> gens) {
      if (gens.empty()) {
        return 0;
      }
      auto const n = gens.front().degree();
      for (auto const& g : gens) {
        if (g.degree() != n) {
          throw Error(ErrorCode::degree_mismatch,
                      "generators of different degrees");
        }
      }
      return n;
    }

    inline void require_rank(std::span<Transformation const> gens,
                             std::size_t                     p) {
      for (auto const& g : gens) {
        if (rank(g) != p) {
          throw Error(ErrorCode::bad_parameter,
                      "generator " + format_transformation(g) + " has rank "
                          + std::to_string(rank(g)) + ", expected "
                          + std::to_string(p));
        }
      }
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Closures
  ////////////////////////////////////////////////////////////////////////

  inline FamilySet closure(std::span<Transformation const> gens) {
    auto const n = detail::common_degree(gens);
    std::unordered_set<Transformation, TransformationHash> seen(gens.begin(),
                                                                gens.end());
    std::vector<Transformation> frontier(seen.begin(), seen.end());
    std::vector<Transformation> unique_gens(seen.begin(), seen.end());
    while (!frontier.empty()) {
      std::vector<Transformation> next;
      for (auto const& a : frontier) {
        for (auto const& g : unique_gens) {
          auto c = a * g;
          if (seen.insert(c).second) {
            next.push_back(c);
          }
        }
      }
      frontier = std::move(next);
    }
    return FamilySet(std::nullopt, n,
                     std::vector<Transformation>(seen.begin(), seen.end()));
  }

  struct ReesClosure {
    std::vector<Transformation> carrier;  // canonical order
    bool                        reached_zero = false;
  };

  // Saturation under the Rees product on rank-p elements; products of lower
  // rank are the zero and are not expanded further.
  inline ReesClosure rees_closure(std::span<Transformation const> gens,
                                  std::size_t                     p) {
    detail::common_degree(gens);
    detail::require_rank(gens, p);
    ReesClosure result;
    std::unordered_set<Transformation, TransformationHash> seen(gens.begin(),
                                                                gens.end());
    std::vector<Transformation> frontier(seen.begin(), seen.end());
    std::vector<Transformation> unique_gens(seen.begin(), seen.end());
    while (!frontier.empty()) {
      std::vector<Transformation> next;
      for (auto const& a : frontier) {
        for (auto const& g : unique_gens) {
          auto c = a * g;
          if (rank(c) < p) {
            result.reached_zero = true;
          } else if (seen.insert(c).second) {
            next.push_back(c);
          }
        }
      }
      frontier = std::move(next);
    }
    result.carrier.assign(seen.begin(), seen.end());
    std::sort(result.carrier.begin(), result.carrier.end());
    return result;
  }

  // Rank-p elements of `target`.
  inline FamilySet rank_slice(FamilySet const& target, std::size_t p) {
    std::vector<Transformation> out;
    for (auto const& t : target) {
      if (rank(t) == p) {
        out.push_back(t);
      }
    }
    return FamilySet(std::nullopt, target.degree(), std::move(out));
  }

  inline bool generates(std::span<Transformation const> gens,
                        FamilySet const&                target,
                        Mode                            mode = plain_mode) {
    if (mode.rees) {
      auto rc = rees_closure(gens, mode.p);
      return rc.carrier == rank_slice(target, mode.p).elements();
    }
    auto const c = closure(gens);
    return std::all_of(target.begin(), target.end(), [&](auto const& t) {
      return c.contains(t);
    });
  }

  ////////////////////////////////////////////////////////////////////////
  // Words
  ////////////////////////////////////////////////////////////////////////

  // Letters index into a generator list; evaluation is left to right.
  struct Word {
    std::vector<std::size_t> letters;
    friend bool operator==(Word const&, Word const&) = default;
  };

  inline Transformation evaluate(Word const&                     w,
                                 std::span<Transformation const> gens) {
    if (w.letters.empty()) {
      throw Error(ErrorCode::bad_parameter, "empty word");
    }
    Transformation result = gens[w.letters.front()];
    for (std::size_t i = 1; i < w.letters.size(); ++i) {
      result = result * gens[w.letters[i]];
    }
    return result;
  }

  // Shortest word over `gens` equal to `target`, least lexicographically
  // among the shortest.  In Rees mode every prefix must keep rank p.
  inline std::optional<Word> factorize(Transformation const&           target,
                                       std::span<Transformation const> gens,
                                       Mode mode = plain_mode) {
    if (gens.empty() || gens.front().degree() != target.degree()) {
      return std::nullopt;
    }
    detail::common_degree(gens);
    if (mode.rees && rank(target) != mode.p) {
      return std::nullopt;
    }
    struct Node {
      Transformation value;
      std::size_t    parent;
      std::size_t    letter;
    };
    constexpr auto npos = std::numeric_limits<std::size_t>::max();
    std::vector<Node>                                                 nodes;
    std::unordered_map<Transformation, std::size_t, TransformationHash> seen;
    auto trace = [&](std::size_t at) {
      Word w;
      for (; at != npos; at = nodes[at].parent) {
        w.letters.push_back(nodes[at].letter);
      }
      std::reverse(w.letters.begin(), w.letters.end());
      return w;
    };
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (mode.rees && rank(gens[i]) != mode.p) {
        continue;
      }
      if (seen.emplace(gens[i], nodes.size()).second) {
        nodes.push_back({gens[i], npos, i});
        if (gens[i] == target) {
          return trace(nodes.size() - 1);
        }
      }
    }
    for (std::size_t head = 0; head < nodes.size(); ++head) {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        auto c = nodes[head].value * gens[i];
        if (mode.rees && rank(c) != mode.p) {
          continue;
        }
        if (seen.emplace(c, nodes.size()).second) {
          nodes.push_back({c, head, i});
          if (c == target) {
            return trace(nodes.size() - 1);
          }
        }
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Indecomposables
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline std::vector<std::size_t>
    indecomposable_indices(ProductTable const& table) {
      std::vector<bool> hit(table.size(), false);
      for (std::size_t i = 0; i < table.size(); ++i) {
        for (std::size_t j = 0; j < table.size(); ++j) {
          auto c = table.product(i, j);
          if (c != ProductTable::kZero && c != ProductTable::kOutside) {
            hit[c] = true;
          }
        }
      }
      std::vector<std::size_t> out;
      for (std::size_t i = 0; i < table.size(); ++i) {
        if (!hit[i]) {
          out.push_back(i);
        }
      }
      return out;
    }

    inline void require_closed(ProductTable const& table) {
      if (auto e = table.escape()) {
        auto const& s = table.set();
        throw Error(ErrorCode::not_closed,
                    format_transformation(s[e->first]) + " * "
                        + format_transformation(s[e->second]) + " = "
                        + format_transformation(s[e->first] * s[e->second])
                        + " is not in " + s.label());
      }
    }
  }  // namespace detail

  // Elements that are not a product of two elements of S (in Rees mode: not
  // a nonzero product).  Every generating set contains them.
  inline FamilySet indecomposables(FamilySet const& s, Mode mode = plain_mode) {
    FamilySet const     carrier = mode.rees ? rank_slice(s, mode.p) : s;
    ProductTable const  table(carrier, mode);
    detail::require_closed(table);
    std::vector<Transformation> out;
    for (auto i : detail::indecomposable_indices(table)) {
      out.push_back(carrier[i]);
    }
    return FamilySet(std::nullopt, s.degree(), std::move(out));
  }

  ////////////////////////////////////////////////////////////////////////
  // Minimum generating sets
  ////////////////////////////////////////////////////////////////////////

  struct RankCertificate {
    std::string                 target;
    std::size_t                 n = 0;
    std::optional<int>          p;
    Mode                        mode;
    std::size_t                 size = 0;
    std::vector<Transformation> generators;
    bool                        exhaustive_below = false;
    std::uint64_t               subsets_tested   = 0;
    bool                        budget_exhausted = false;
    std::size_t                 lower_bound      = 0;
    std::size_t                 upper_bound      = 0;
    std::size_t                 seed_count       = 0;  // indecomposables
    std::vector<std::pair<Transformation, Word>> factorizations;

    [[nodiscard]] bool exact() const noexcept {
      return !budget_exhausted && lower_bound == upper_bound;
    }
  };

  struct MinRankOptions {
    std::uint64_t budget = 10'000'000;  // closure evaluations
    unsigned      jobs   = 1;
    std::string   label;                // defaults to the target's label
  };

  namespace detail {

    inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
      auto const k = c.size();
      for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
          ++c[i];
          for (std::size_t j = i + 1; j < k; ++j) {
            c[j] = c[j - 1] + 1;
          }
          return true;
        }
      }
      return false;
    }

    // Tests every `extra`-subset of `rest` (in lexicographic order) added to
    // `seeds`.  Returns the first generating one.  Workers pull batches in
    // sequence order and the least successful sequence number wins, so the
    // answer does not depend on the number of workers.
    struct LevelResult {
      std::optional<std::vector<std::size_t>> found;
      std::uint64_t                           tested          = 0;
      bool                                    budget_exceeded = false;
    };

    inline LevelResult search_level(ProductTable const&             table,
                                    std::vector<std::size_t> const& seeds,
                                    std::vector<std::size_t> const& rest,
                                    std::size_t                     extra,
                                    std::uint64_t                   allowed,
                                    unsigned                        jobs) {
      LevelResult result;
      if (extra > rest.size()) {
        return result;
      }
      constexpr std::uint64_t kBatch = 512;
      std::mutex               mtx;
      std::vector<std::size_t> cursor(extra);
      for (std::size_t i = 0; i < extra; ++i) {
        cursor[i] = i;
      }
      bool          exhausted = false;
      std::uint64_t next_seq  = 0;
      std::uint64_t best_seq  = std::numeric_limits<std::uint64_t>::max();
      std::atomic<bool> over_budget{false};

      auto worker = [&] {
        std::vector<std::size_t> gens(seeds.size() + extra);
        std::copy(seeds.begin(), seeds.end(), gens.begin());
        while (true) {
          std::vector<std::vector<std::size_t>> batch;
          std::uint64_t                           first_seq;
          {
            std::lock_guard lock(mtx);
            if (exhausted || next_seq > best_seq || over_budget) {
              return;
            }
            first_seq = next_seq;
            while (batch.size() < kBatch && !exhausted) {
              batch.push_back(cursor);
              ++next_seq;
              exhausted = !next_combination(cursor, rest.size());
            }
          }
          // Budget is charged by position, not by work done, so the outcome
          // is the one a single worker would reach.
          for (std::size_t b = 0; b < batch.size(); ++b) {
            if (first_seq + b >= allowed) {
              over_budget = true;
              return;
            }
            for (std::size_t i = 0; i < extra; ++i) {
              gens[seeds.size() + i] = rest[batch[b][i]];
            }
            if (closure_of(table, gens, true).count == table.size()) {
              std::lock_guard lock(mtx);
              if (first_seq + b < best_seq) {
                best_seq     = first_seq + b;
                result.found = batch[b];
              }
              break;
            }
          }
        }
      };

      if (jobs <= 1) {
        worker();
      } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < jobs; ++w) {
          pool.emplace_back(worker);
        }
      }
      if (result.found) {
        result.tested = best_seq + 1;
        for (auto& i : *result.found) {
          i = rest[i];
        }
      } else {
        result.budget_exceeded = over_budget.load();
        result.tested          = result.budget_exceeded ? allowed : next_seq;
      }
      return result;
    }
  }  // namespace detail

  // Exact minimum size of a generating set of `target` (a closed set in
  // plain mode, or the rank-p elements of target in Rees mode).  Every
  // candidate contains the indecomposables; a greedy pass bounds the search
  // from above and subsets are then tried level by level.
  inline RankCertificate min_rank(FamilySet const&      target,
                                  Mode                  mode,
                                  MinRankOptions const& opts = {}) {
    FamilySet const carrier = mode.rees ? rank_slice(target, mode.p) : target;
    if (carrier.empty()) {
      throw Error(ErrorCode::bad_parameter, "min_rank of an empty target");
    }
    ProductTable const table(carrier, mode);
    detail::require_closed(table);

    RankCertificate cert;
    cert.target = opts.label.empty() ? target.label() : opts.label;
    cert.n      = target.degree();
    if (target.family() && target.family()->p) {
      cert.p = target.family()->p;
    }
    if (mode.rees) {
      cert.p = static_cast<int>(mode.p);
    }
    cert.mode = mode;

    auto const seeds = detail::indecomposable_indices(table);
    cert.seed_count  = seeds.size();
    std::vector<std::size_t> rest;
    {
      std::vector<bool> is_seed(table.size(), false);
      for (auto s : seeds) {
        is_seed[s] = true;
      }
      for (std::size_t i = 0; i < table.size(); ++i) {
        if (!is_seed[i]) {
          rest.push_back(i);
        }
      }
    }

    std::uint64_t spent = 0;
    auto to_elements = [&](std::vector<std::size_t> idx) {
      std::sort(idx.begin(), idx.end());
      std::vector<Transformation> out;
      for (auto i : idx) {
        out.push_back(carrier[i]);
      }
      return out;
    };

    // Greedy upper bound.
    std::vector<std::size_t> greedy = seeds;
    {
      auto current = closure_of(table, greedy, true).count;
      ++spent;
      while (current < table.size()) {
        std::size_t best = rest.front(), best_count = 0;
        for (auto r : rest) {
          if (std::find(greedy.begin(), greedy.end(), r) != greedy.end()) {
            continue;
          }
          greedy.push_back(r);
          auto c = closure_of(table, greedy, true).count;
          ++spent;
          greedy.pop_back();
          if (c > best_count) {
            best       = r;
            best_count = c;
          }
        }
        greedy.push_back(best);
        current = best_count;
      }
    }
    cert.upper_bound = greedy.size();
    cert.lower_bound = std::max<std::size_t>(seeds.size(), 1);

    for (std::size_t extra = 0; seeds.size() + extra <= greedy.size(); ++extra) {
      auto const allowed = opts.budget > spent ? opts.budget - spent : 0;
      auto level = detail::search_level(table, seeds, rest, extra, allowed,
                                        opts.jobs);
      spent += level.tested;
      cert.subsets_tested += level.tested;
      if (level.found) {
        std::vector<std::size_t> gens = seeds;
        gens.insert(gens.end(), level.found->begin(), level.found->end());
        cert.generators       = to_elements(gens);
        cert.size             = gens.size();
        cert.lower_bound      = cert.upper_bound = cert.size;
        cert.exhaustive_below = true;
        return cert;
      }
      if (level.budget_exceeded) {
        cert.budget_exhausted = true;
        cert.lower_bound      = std::max(cert.lower_bound, seeds.size() + extra);
        cert.generators       = to_elements(greedy);
        cert.size             = greedy.size();
        return cert;
      }
      cert.lower_bound = seeds.size() + extra + 1;
    }
    // Unreachable: the greedy set itself is tried at the last level.
    throw Error(ErrorCode::bad_parameter, "min_rank search ended without a set");
  }

  // Fills `cert.factorizations` with a shortest word for every element of
  // the target.
  inline void attach_factorizations(RankCertificate& cert,
                                    FamilySet const& target) {
    cert.factorizations.clear();
    FamilySet const carrier
        = cert.mode.rees ? rank_slice(target, cert.mode.p) : target;
    for (auto const& t : carrier) {
      if (auto w = factorize(t, cert.generators, cert.mode)) {
        cert.factorizations.emplace_back(t, *w);
      }
    }
  }

  // Re-checks a certificate without the product table: the generators must
  // generate, and when exhaustive_below is set, no (size-1)-subset containing
  // the indecomposables may generate.
  inline bool revalidate(RankCertificate const& cert, FamilySet const& target) {
    if (!generates(cert.generators, target, cert.mode)) {
      return false;
    }
    if (!cert.exhaustive_below || cert.size == 0) {
      return true;
    }
    FamilySet const carrier
        = cert.mode.rees ? rank_slice(target, cert.mode.p) : target;
    std::unordered_set<Transformation, TransformationHash> products;
    for (auto const& a : carrier) {
      for (auto const& b : carrier) {
        auto c = a * b;
        if (!cert.mode.rees || rank(c) == cert.mode.p) {
          products.insert(c);
        }
      }
    }
    std::vector<Transformation> seeds, rest;
    for (auto const& t : carrier) {
      (products.count(t) ? rest : seeds).push_back(t);
    }
    std::size_t const k = cert.size - 1;
    if (seeds.size() > k) {
      return true;
    }
    std::size_t const        extra = k - seeds.size();
    if (extra > rest.size()) {
      return true;
    }
    std::vector<std::size_t> c(extra);
    for (std::size_t i = 0; i < extra; ++i) {
      c[i] = i;
    }
    do {
      std::vector<Transformation> gens = seeds;
      for (auto i : c) {
        gens.push_back(rest[i]);
      }
      if (!gens.empty() && generates(gens, target, cert.mode)) {
        return false;
      }
    } while (detail::next_combination(c, rest.size()));
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // The explicit generating sets and inclusions
  ////////////////////////////////////////////////////////////////////////

  enum class GensetVariant { Q, W };

  // Q: (R_eta u L_delta) \ delta inside K_p.
  // W: (R_eta u L_delta*) \ delta, with L_delta* taken inside K_p*.
  inline std::vector<Transformation>
  corner_genset(std::size_t n, std::size_t p, GensetVariant variant) {
    if (p < 2 || p + 1 > n) {
      throw Error(ErrorCode::bad_parameter,
                  "generating sets need 2 <= p <= n-1");
    }
    auto const k     = enumerate(FamilyId{FamilyTag::k, static_cast<int>(p)}, n,
                                 Method::construct);
    auto const delta = corner(n, p, Corner::delta);
    auto const r_eta = class_of(corner(n, p, Corner::eta), k, ClassRelation::R);
    std::vector<Transformation> out(r_eta.begin(), r_eta.end());
    if (variant == GensetVariant::Q) {
      auto l = class_of(delta, k, ClassRelation::L);
      out.insert(out.end(), l.begin(), l.end());
    } else {
      auto const ks = enumerate(FamilyId{FamilyTag::k_star, static_cast<int>(p)},
                                n, Method::construct);
      auto l = class_of(corner(n, p, Corner::delta_star), ks, ClassRelation::L);
      out.insert(out.end(), l.begin(), l.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    out.erase(std::remove(out.begin(), out.end(), delta), out.end());
    return out;
  }

  enum class InclusionVariant { K, J };

  // Whether every element of K_p (or J_p) lies in the closure of K_{p+1}
  // (or J_{p+1}).
  inline bool inclusion_check(std::size_t n, std::size_t p,
                              InclusionVariant variant) {
    if (n < 4 || p < 1 || p + 2 > n) {
      throw Error(ErrorCode::bad_parameter,
                  "inclusion_check needs n >= 4 and 1 <= p <= n-2");
    }
    auto const tag   = variant == InclusionVariant::K ? FamilyTag::k : FamilyTag::j;
    auto const lower = enumerate(FamilyId{tag, static_cast<int>(p)}, n,
                                 Method::construct);
    auto const upper = enumerate(FamilyId{tag, static_cast<int>(p + 1)}, n,
                                 Method::construct);
    return generates(upper.elements(), lower, plain_mode);
  }

}  // namespace contractions

#endif  // CONTRACTIONS_GENRANK_HPP_
