#ifndef CONTRACTIONS_GREENS_HPP_
#define CONTRACTIONS_GREENS_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "error.hpp"
#include "families.hpp"
#include "genrank.hpp"
#include "product_table.hpp"
#include "transformation.hpp"

namespace contractions {

  // Classes are lists of element indices into `base`, each sorted, ordered by
  // their least index.
  using Partition = std::vector<std::vector<std::size_t>>;

  struct GreensStructure {
    FamilySet base;
    Partition r_classes;
    Partition l_classes;
    Partition h_classes;
    Partition d_classes;
  };

  namespace detail {

    template <typename Key, typename KeyOf>
    Partition partition_by(std::size_t n, KeyOf key_of) {
      std::map<Key, std::size_t> slot;
      Partition                  out;
      for (std::size_t i = 0; i < n; ++i) {
        auto [it, fresh] = slot.emplace(key_of(i), out.size());
        if (fresh) {
          out.emplace_back();
        }
        out[it->second].push_back(i);
      }
      return out;
    }

    inline std::vector<std::size_t> class_ids(Partition const& p,
                                              std::size_t      n) {
      std::vector<std::size_t> id(n);
      for (std::size_t c = 0; c < p.size(); ++c) {
        for (auto i : p[c]) {
          id[i] = c;
        }
      }
      return id;
    }

    inline Partition meet(Partition const& a, Partition const& b,
                          std::size_t n) {
      auto ia = class_ids(a, n), ib = class_ids(b, n);
      return partition_by<std::pair<std::size_t, std::size_t>>(
          n, [&](std::size_t i) { return std::make_pair(ia[i], ib[i]); });
    }

    // Transitive closure of the union of two equivalences.
    inline Partition join(Partition const& a, Partition const& b,
                          std::size_t n) {
      std::vector<std::size_t> parent(n);
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](std::size_t x) {
        while (parent[x] != x) {
          x = parent[x] = parent[parent[x]];
        }
        return x;
      };
      for (auto const* part : {&a, &b}) {
        for (auto const& cls : *part) {
          for (auto i : cls) {
            auto ra = find(cls.front()), rb = find(i);
            if (ra != rb) {
              parent[std::max(ra, rb)] = std::min(ra, rb);
            }
          }
        }
      }
      return partition_by<std::size_t>(n, find);
    }

    inline GreensStructure assemble(FamilySet base, Partition r, Partition l) {
      auto const n = base.size();
      auto       h = meet(r, l, n);
      auto       d = join(r, l, n);
      return GreensStructure{std::move(base), std::move(r), std::move(l),
                             std::move(h), std::move(d)};
    }

    inline std::vector<Transformation> sorted(std::vector<Transformation> v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      return v;
    }

    // aS^1 (right) or S^1a (left) as a sorted list of maps; S need not be
    // closed.
    inline std::vector<Transformation>
    principal_ideal(Transformation const& a, FamilySet const& s, bool right) {
      std::vector<Transformation> out{a};
      for (auto const& t : s) {
        out.push_back(right ? a * t : t * a);
      }
      return sorted(std::move(out));
    }
  }  // namespace detail

  // R by equal image, L by equal kernel.
  inline GreensStructure greens_by_invariants(FamilySet const& s) {
    auto r = detail::partition_by<std::vector<int>>(
        s.size(), [&](std::size_t i) { return image(s[i]); });
    auto l = detail::partition_by<KernelPartition>(
        s.size(), [&](std::size_t i) { return kernel(s[i]); });
    return detail::assemble(s, std::move(r), std::move(l));
  }

  // R by equal principal right ideals aS^1, L by equal principal left ideals
  // S^1a, with an identity adjoined whether or not S has one.
  inline GreensStructure greens_abstract(FamilySet const& s) {
    ProductTable const table(s);
    detail::require_closed(table);
    auto const n = s.size();
    std::vector<boost::dynamic_bitset<>> right(n, boost::dynamic_bitset<>(n)),
        left(n, boost::dynamic_bitset<>(n));
    for (std::size_t i = 0; i < n; ++i) {
      right[i].set(i);
      left[i].set(i);
      for (std::size_t j = 0; j < n; ++j) {
        right[i].set(table.product(i, j));
        left[i].set(table.product(j, i));
      }
    }
    auto r = detail::partition_by<boost::dynamic_bitset<>>(
        n, [&](std::size_t i) { return right[i]; });
    auto l = detail::partition_by<boost::dynamic_bitset<>>(
        n, [&](std::size_t i) { return left[i]; });
    return detail::assemble(s, std::move(r), std::move(l));
  }

  inline FamilySet regular_elements(FamilySet const& s) {
    std::vector<Transformation> out;
    for (auto const& a : s) {
      for (auto const& b : s) {
        if (a * b * a == a) {
          out.push_back(a);
          break;
        }
      }
    }
    return FamilySet(std::nullopt, s.degree(), std::move(out));
  }

  ////////////////////////////////////////////////////////////////////////
  // Structure report
  ////////////////////////////////////////////////////////////////////////

  struct Witness {
    std::string    flag;  // "closed", "all_regular" or "l_unipotent"
    Transformation first;
    Transformation second;
  };

  struct StructureReport {
    bool                 closed      = false;
    bool                 all_regular = false;
    bool                 l_unipotent = false;
    std::size_t          idempotent_count = 0;
    // Same count taken over kernel classes instead of L-classes.
    bool                 kernel_classes_unipotent = false;
    std::vector<Witness> witnesses;
  };

  // `l_unipotent` uses the L-classes of principal left ideals S^1a; on the
  // regular families these are the image classes.
  inline StructureReport structure_report(FamilySet const& s) {
    StructureReport rep;

    rep.closed = true;
    for (auto const& a : s) {
      for (auto const& b : s) {
        if (!s.contains(a * b)) {
          rep.closed = false;
          rep.witnesses.push_back({"closed", a, b});
          break;
        }
      }
      if (!rep.closed) {
        break;
      }
    }

    auto const reg  = regular_elements(s);
    rep.all_regular = reg.size() == s.size();
    if (!rep.all_regular) {
      for (auto const& a : s) {
        if (!reg.contains(a)) {
          rep.witnesses.push_back({"all_regular", a, a});
          break;
        }
      }
    }

    std::vector<bool> idem(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      idem[i] = s[i] * s[i] == s[i];
      rep.idempotent_count += idem[i];
    }

    auto unipotent = [&](Partition const& classes, Witness* witness) {
      for (auto const& cls : classes) {
        std::vector<std::size_t> es;
        for (auto i : cls) {
          if (idem[i]) {
            es.push_back(i);
          }
        }
        if (es.size() != 1) {
          if (witness != nullptr) {
            auto const a = es.empty() ? cls.front() : es[0];
            auto const b = es.size() > 1 ? es[1] : a;
            *witness     = {"l_unipotent", s[a], s[b]};
          }
          return false;
        }
      }
      return true;
    };

    auto l_classes = detail::partition_by<std::vector<Transformation>>(
        s.size(), [&](std::size_t i) {
          return detail::principal_ideal(s[i], s, false);
        });
    Witness w;
    rep.l_unipotent = unipotent(l_classes, &w);
    if (!rep.l_unipotent) {
      rep.witnesses.push_back(w);
    }
    rep.kernel_classes_unipotent
        = unipotent(detail::partition_by<KernelPartition>(
                        s.size(), [&](std::size_t i) { return kernel(s[i]); }),
                    nullptr);
    return rep;
  }

}  // namespace contractions

#endif  // CONTRACTIONS_GREENS_HPP_
