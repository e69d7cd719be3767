#ifndef CONTRACTIONS_PRODUCT_TABLE_HPP_
#define CONTRACTIONS_PRODUCT_TABLE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "families.hpp"
#include "transformation.hpp"

namespace contractions {

  // How products are read: plainly, or in the Rees quotient on the rank-p
  // elements, where a product of rank below p is the zero.
  struct Mode {
    bool        rees = false;
    std::size_t p    = 0;

    [[nodiscard]] std::string to_string() const {
      return rees ? "rees(" + std::to_string(p) + ")" : std::string("plain");
    }
    friend bool operator==(Mode const&, Mode const&) = default;
  };

  inline constexpr Mode plain_mode{};

  inline Mode rees_mode(std::size_t p) {
    return {true, p};
  }

  // Multiplication table of a FamilySet by element index.
  class ProductTable {
   public:
    using index_type                     = std::uint32_t;
    static constexpr index_type kOutside = 0xFFFFFFFF;
    static constexpr index_type kZero    = 0xFFFFFFFE;

    ProductTable(FamilySet const& set, Mode mode = plain_mode)
        : _set(set), _mode(mode), _n(set.size()), _table(_n * _n) {
      for (std::size_t i = 0; i < _n; ++i) {
        for (std::size_t j = 0; j < _n; ++j) {
          auto const prod = set[i] * set[j];
          index_type entry;
          if (mode.rees && rank(prod) < mode.p) {
            entry = kZero;
          } else if (auto k = set.index_of(prod)) {
            entry = static_cast<index_type>(*k);
          } else {
            entry = kOutside;
            if (!_escape) {
              _escape = std::make_pair(i, j);
            }
          }
          _table[i * _n + j] = entry;
        }
      }
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return _n;
    }
    [[nodiscard]] Mode mode() const noexcept {
      return _mode;
    }
    [[nodiscard]] FamilySet const& set() const noexcept {
      return _set;
    }
    [[nodiscard]] index_type product(std::size_t i, std::size_t j) const {
      return _table[i * _n + j];
    }
    [[nodiscard]] bool closed() const noexcept {
      return !_escape.has_value();
    }
    // First (in index order) pair whose product leaves the set.
    [[nodiscard]] std::optional<std::pair<std::size_t, std::size_t>>
    escape() const noexcept {
      return _escape;
    }

   private:
    FamilySet                                          _set;
    Mode                                               _mode;
    std::size_t                                        _n;
    std::vector<index_type>                            _table;
    std::optional<std::pair<std::size_t, std::size_t>> _escape;
  };

  struct IndexClosure {
    boost::dynamic_bitset<> members;
    std::size_t             count        = 0;
    bool                    reached_zero = false;
    bool                    escaped      = false;
  };

  // Saturates `gens` under right multiplication by `gens`, which reaches every
  // product of generators.  With `stop_when_full` the walk ends as soon as
  // every element is a member; `reached_zero` is then only a lower bound.
  inline IndexClosure closure_of(ProductTable const&             table,
                                 std::vector<std::size_t> const& gens,
                                 bool stop_when_full = false) {
    IndexClosure result;
    result.members.resize(table.size());
    std::vector<std::size_t> stack;
    for (auto g : gens) {
      if (!result.members.test(g)) {
        result.members.set(g);
        ++result.count;
        stack.push_back(g);
      }
    }
    while (!stack.empty()) {
      if (stop_when_full && result.count == table.size()) {
        break;
      }
      auto const a = stack.back();
      stack.pop_back();
      for (auto g : gens) {
        auto const c = table.product(a, g);
        if (c == ProductTable::kZero) {
          result.reached_zero = true;
        } else if (c == ProductTable::kOutside) {
          result.escaped = true;
        } else if (!result.members.test(c)) {
          result.members.set(c);
          ++result.count;
          stack.push_back(c);
        }
      }
    }
    return result;
  }

}  // namespace contractions

#endif  // CONTRACTIONS_PRODUCT_TABLE_HPP_
