#ifndef CONTRACTIONS_FAMILIES_HPP_
#define CONTRACTIONS_FAMILIES_HPP_

// The named families of contractions of [n], each available two ways: by
// filtering all n^n maps against the definitions, and by building the closed
// forms directly.

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <utility>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "error.hpp"
#include "transformation.hpp"

namespace contractions {

  enum class FamilyTag {
    ct,
    oct,
    orct,
    reg_oct,
    reg_orct,
    e_oct,
    e_orct,
    k,       // rank-p part of Reg(OCT_n)
    k_star,  // order-reversing rank-p part of Reg(ORCT_n)
    j,       // rank-p part of Reg(ORCT_n)
    e,       // rank-p idempotents
    l,       // rank <= p part of Reg(OCT_n)
    m,       // rank <= p part of Reg(ORCT_n)
  };

  constexpr bool takes_parameter(FamilyTag tag) noexcept {
    switch (tag) {
      case FamilyTag::k:
      case FamilyTag::k_star:
      case FamilyTag::j:
      case FamilyTag::e:
      case FamilyTag::l:
      case FamilyTag::m: return true;
      default: return false;
    }
  }

  struct FamilyId {
    FamilyTag          tag;
    std::optional<int> p;

    friend bool operator==(FamilyId const&, FamilyId const&) = default;
  };

  namespace detail {
    struct TagName {
      FamilyTag        tag;
      std::string_view name;
    };
    inline constexpr TagName kTagNames[] = {
        {FamilyTag::ct, "ct"},
        {FamilyTag::oct, "oct"},
        {FamilyTag::orct, "orct"},
        {FamilyTag::reg_oct, "reg-oct"},
        {FamilyTag::reg_orct, "reg-orct"},
        {FamilyTag::e_oct, "e-oct"},
        {FamilyTag::e_orct, "e-orct"},
        {FamilyTag::k, "k"},
        {FamilyTag::k_star, "k*"},
        {FamilyTag::j, "j"},
        {FamilyTag::e, "e"},
        {FamilyTag::l, "l"},
        {FamilyTag::m, "m"},
    };

    inline std::optional<int> parse_int(std::string_view s) {
      int  v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        return std::nullopt;
      }
      return v;
    }
  }  // namespace detail

  constexpr std::string_view tag_name(FamilyTag tag) noexcept {
    for (auto const& tn : detail::kTagNames) {
      if (tn.tag == tag) {
        return tn.name;
      }
    }
    return "?";
  }

  inline std::string to_spec(FamilyId const& id) {
    std::string s(tag_name(id.tag));
    if (id.p) {
      s += ':' + std::to_string(*id.p);
    }
    return s;
  }

  // Family spec strings: ct, oct, orct, reg-oct, reg-orct, e-oct, e-orct,
  // k:<p>, k*:<p>, j:<p>, e:<p>, l:<p>, m:<p>.
  inline FamilyId parse_family_spec(std::string_view spec) {
    auto colon = spec.find(':');
    auto head  = spec.substr(0, colon);
    for (auto const& tn : detail::kTagNames) {
      if (tn.name != head) {
        continue;
      }
      if (takes_parameter(tn.tag)) {
        if (colon == std::string_view::npos) {
          throw Error(ErrorCode::syntax_error,
                      "family \"" + std::string(head) + "\" needs :<p>");
        }
        auto p = detail::parse_int(spec.substr(colon + 1));
        if (!p) {
          throw Error(ErrorCode::syntax_error,
                      "bad parameter in \"" + std::string(spec) + "\"");
        }
        return {tn.tag, *p};
      }
      if (colon != std::string_view::npos) {
        throw Error(ErrorCode::syntax_error,
                    "family \"" + std::string(head) + "\" takes no parameter");
      }
      return {tn.tag, std::nullopt};
    }
    throw Error(ErrorCode::syntax_error,
                "unknown family \"" + std::string(spec) + "\"");
  }

  ////////////////////////////////////////////////////////////////////////
  // FamilySet
  ////////////////////////////////////////////////////////////////////////

  // A finite set of transformations of one degree, kept sorted in the
  // canonical order.  `family()` is empty for sets that are not one of the
  // named families (closures, user-supplied generator lists).
  class FamilySet {
   public:
    using const_iterator = std::vector<Transformation>::const_iterator;

    FamilySet(std::optional<FamilyId>     family,
              std::size_t                 n,
              std::vector<Transformation> elements)
        : _family(family), _degree(n), _elements(std::move(elements)) {
      for (auto const& t : _elements) {
        if (t.degree() != n) {
          throw Error(ErrorCode::degree_mismatch,
                      "element " + format_transformation(t)
                          + " has the wrong degree for a degree "
                          + std::to_string(n) + " set");
        }
      }
      std::sort(_elements.begin(), _elements.end());
      _elements.erase(std::unique(_elements.begin(), _elements.end()),
                      _elements.end());
    }

    [[nodiscard]] std::optional<FamilyId> const& family() const noexcept {
      return _family;
    }
    [[nodiscard]] std::string label() const {
      return _family ? to_spec(*_family) : std::string("custom");
    }
    [[nodiscard]] std::size_t degree() const noexcept {
      return _degree;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _elements.size();
    }
    [[nodiscard]] bool empty() const noexcept {
      return _elements.empty();
    }
    [[nodiscard]] std::vector<Transformation> const& elements() const noexcept {
      return _elements;
    }
    [[nodiscard]] Transformation const& operator[](std::size_t i) const {
      return _elements[i];
    }
    [[nodiscard]] const_iterator begin() const noexcept {
      return _elements.begin();
    }
    [[nodiscard]] const_iterator end() const noexcept {
      return _elements.end();
    }

    [[nodiscard]] std::optional<std::size_t>
    index_of(Transformation const& t) const {
      auto it = std::lower_bound(_elements.begin(), _elements.end(), t);
      if (it == _elements.end() || *it != t) {
        return std::nullopt;
      }
      return static_cast<std::size_t>(it - _elements.begin());
    }
    [[nodiscard]] bool contains(Transformation const& t) const {
      return index_of(t).has_value();
    }

    // Equality compares the element sets only.
    friend bool operator==(FamilySet const& a, FamilySet const& b) {
      return a._degree == b._degree && a._elements == b._elements;
    }

   private:
    std::optional<FamilyId>     _family;
    std::size_t                 _degree;
    std::vector<Transformation> _elements;
  };

  ////////////////////////////////////////////////////////////////////////
  // Closed forms
  ////////////////////////////////////////////////////////////////////////

  // Element of the rank-p grid: kernel ({1..c+1}, c+2, ..., c+p-1, {c+p..n})
  // mapped in order onto {r+1, ..., r+p}, where c = kernel_shift and
  // r = image_shift, both in [0, n-p].
  inline Transformation grid_element(std::size_t n,
                                     std::size_t p,
                                     std::size_t kernel_shift,
                                     std::size_t image_shift) {
    if (p < 2 || p > n || kernel_shift > n - p || image_shift > n - p) {
      throw Error(ErrorCode::bad_parameter,
                  "grid_element needs 2 <= p <= n and shifts in [0, n-p]");
    }
    std::vector<long long> img(n);
    for (std::size_t x = 1; x <= n; ++x) {
      std::size_t block;
      if (x <= kernel_shift + 1) {
        block = 0;
      } else if (x >= kernel_shift + p) {
        block = p - 1;
      } else {
        block = x - kernel_shift - 1;
      }
      img[x - 1] = static_cast<long long>(image_shift + 1 + block);
    }
    return make_transformation(n, std::span<long long const>(img));
  }

  // ({1..i} -> i, i+1 -> i+1, ..., i+j-1 -> i+j-1, {i+j..n} -> i+j); an
  // idempotent of rank j+1.
  inline Transformation idempotent_from(std::size_t n, int i, int j) {
    if (i < 1 || j < 0 || i + j > static_cast<int>(n)) {
      throw Error(ErrorCode::bad_parameter,
                  "idempotent_from needs i >= 1, j >= 0, i + j <= n");
    }
    std::vector<long long> img(n);
    for (int x = 1; x <= static_cast<int>(n); ++x) {
      img[x - 1] = std::clamp(x, i, i + j);
    }
    return make_transformation(n, std::span<long long const>(img));
  }

  inline Transformation star(Transformation const& t) {
    return compose(t, reversal(t.degree()));
  }

  // Reverses the order of the image within its own range, keeping the image
  // set: x -> (min Im + max Im) - xt.
  inline Transformation reverse_within_image(Transformation const& t) {
    auto                   img = t.images();
    int const              lo  = *std::min_element(img.begin(), img.end());
    int const              hi  = *std::max_element(img.begin(), img.end());
    std::vector<long long> out(img.size());
    for (std::size_t x = 0; x < img.size(); ++x) {
      out[x] = lo + hi - img[x];
    }
    return make_transformation(t.degree(), std::span<long long const>(out));
  }

  enum class Corner { eta, delta, tau, eta_star, delta_star, tau_star };

  inline Transformation corner(std::size_t n, std::size_t p, Corner which) {
    if (n < 2 || p < 2 || p + 1 > n) {
      throw Error(ErrorCode::bad_parameter,
                  "corner elements need 2 <= p <= n-1");
    }
    auto const m = n - p;
    switch (which) {
      case Corner::eta: return grid_element(n, p, m, 0);
      case Corner::delta: return grid_element(n, p, 0, 0);
      case Corner::tau: return grid_element(n, p, 0, m);
      case Corner::eta_star: return reverse_within_image(grid_element(n, p, m, 0));
      case Corner::delta_star:
        return reverse_within_image(grid_element(n, p, 0, 0));
      case Corner::tau_star: return reverse_within_image(grid_element(n, p, 0, m));
    }
    throw Error(ErrorCode::bad_parameter, "unknown corner");
  }

  ////////////////////////////////////////////////////////////////////////
  // Enumeration
  ////////////////////////////////////////////////////////////////////////

  enum class Method { filter, construct };

  struct EnumerateOptions {
    std::size_t scale_ceiling = 8;
    bool        force_scale   = false;
    unsigned    jobs          = 1;
  };

  namespace detail {

    inline void check_parameter(FamilyId const& id, std::size_t n) {
      if (n == 0) {
        throw Error(ErrorCode::bad_parameter, "n must be positive");
      }
      if (takes_parameter(id.tag)) {
        if (!id.p || *id.p < 1 || *id.p > static_cast<int>(n)) {
          throw Error(ErrorCode::bad_parameter,
                      "family " + to_spec(id) + " needs 1 <= p <= "
                          + std::to_string(n));
        }
      }
    }

    // All maps of [n] accepted by `keep`, in canonical order.  The search
    // space is split on the image of 1, which is the most significant
    // coordinate, so concatenated chunks stay sorted.
    template <typename Pred>
    std::vector<Transformation>
    filter_all_maps(std::size_t n, Pred keep, unsigned jobs) {
      std::vector<std::vector<Transformation>> chunks(n);
      auto work = [&](std::size_t first) {
        std::vector<long long> img(n, 1);
        img[0] = static_cast<long long>(first + 1);
        while (true) {
          auto t = make_transformation(n, std::span<long long const>(img));
          if (keep(t)) {
            chunks[first].push_back(t);
          }
          bool done = true;
          for (std::size_t pos = n; pos-- > 1;) {
            if (img[pos] < static_cast<long long>(n)) {
              ++img[pos];
              done = false;
              break;
            }
            img[pos] = 1;
          }
          if (done) {
            break;
          }
        }
      };
      unsigned const workers = std::max(1u, std::min<unsigned>(jobs, n));
      if (workers == 1) {
        for (std::size_t f = 0; f < n; ++f) {
          work(f);
        }
      } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
          pool.emplace_back([&, w] {
            for (std::size_t f = w; f < n; f += workers) {
              work(f);
            }
          });
        }
      }
      std::vector<Transformation> result;
      for (auto& c : chunks) {
        result.insert(result.end(), c.begin(), c.end());
      }
      return result;
    }

    inline std::vector<Transformation>
    regular_within(std::vector<Transformation> const& ambient) {
      std::vector<Transformation> result;
      for (auto const& a : ambient) {
        for (auto const& b : ambient) {
          if (a * b * a == a) {
            result.push_back(a);
            break;
          }
        }
      }
      return result;
    }

    template <typename Pred>
    std::vector<Transformation> keep_if(std::vector<Transformation> const& v,
                                        Pred                              keep) {
      std::vector<Transformation> result;
      std::copy_if(v.begin(), v.end(), std::back_inserter(result), keep);
      return result;
    }

    // Ambient filter sets: ct, oct, orct and their regular parts.
    inline std::vector<Transformation>
    filter_ambient(FamilyTag tag, std::size_t n, unsigned jobs) {
      switch (tag) {
        case FamilyTag::ct:
          return filter_all_maps(
              n, [](Transformation const& t) { return classify(t).contraction; },
              jobs);
        case FamilyTag::oct:
          return filter_all_maps(
              n,
              [](Transformation const& t) {
                auto f = classify(t);
                return f.contraction && f.order_preserving;
              },
              jobs);
        case FamilyTag::orct:
          return filter_all_maps(
              n,
              [](Transformation const& t) {
                auto f = classify(t);
                return f.contraction && (f.order_preserving || f.order_reversing);
              },
              jobs);
        case FamilyTag::reg_oct:
          return regular_within(filter_ambient(FamilyTag::oct, n, jobs));
        case FamilyTag::reg_orct:
          return regular_within(filter_ambient(FamilyTag::orct, n, jobs));
        default:
          throw Error(ErrorCode::bad_parameter, "not an ambient family");
      }
    }

    // `ambient(tag)` supplies the sets produced by filter_ambient.
    template <typename Ambient>
    std::vector<Transformation>
    filter_family(FamilyId const& id, std::size_t n, Ambient&& ambient) {
      (void) n;
      auto idem = [](Transformation const& t) { return t * t == t; };
      std::size_t const p = id.p ? static_cast<std::size_t>(*id.p) : 0;
      auto rank_eq = [p](Transformation const& t) { return rank(t) == p; };
      auto rank_le = [p](Transformation const& t) { return rank(t) <= p; };

      switch (id.tag) {
        case FamilyTag::ct:
        case FamilyTag::oct:
        case FamilyTag::orct:
        case FamilyTag::reg_oct:
        case FamilyTag::reg_orct: return ambient(id.tag);
        case FamilyTag::e_oct: return keep_if(ambient(FamilyTag::oct), idem);
        case FamilyTag::e_orct: return keep_if(ambient(FamilyTag::orct), idem);
        case FamilyTag::k: return keep_if(ambient(FamilyTag::reg_oct), rank_eq);
        case FamilyTag::k_star:
          return keep_if(ambient(FamilyTag::reg_orct), [&](Transformation const& t) {
            return rank_eq(t) && classify(t).order_reversing;
          });
        case FamilyTag::j: return keep_if(ambient(FamilyTag::reg_orct), rank_eq);
        case FamilyTag::e:
          return keep_if(keep_if(ambient(FamilyTag::orct), idem), rank_eq);
        case FamilyTag::l: return keep_if(ambient(FamilyTag::reg_oct), rank_le);
        case FamilyTag::m: return keep_if(ambient(FamilyTag::reg_orct), rank_le);
      }
      return {};
    }

    inline std::vector<Transformation> construct_k(std::size_t n, std::size_t p) {
      std::vector<Transformation> out;
      if (p == 1) {
        for (std::size_t c = 1; c <= n; ++c) {
          out.push_back(constant(n, static_cast<int>(c)));
        }
        return out;
      }
      for (std::size_t r = 0; r <= n - p; ++r) {
        for (std::size_t c = 0; c <= n - p; ++c) {
          out.push_back(grid_element(n, p, c, r));
        }
      }
      return out;
    }

    inline std::vector<Transformation> construct_k_star(std::size_t n,
                                                        std::size_t p) {
      auto out = construct_k(n, p);
      for (auto& t : out) {
        t = star(t);
      }
      return out;
    }

    inline std::vector<Transformation> construct_j(std::size_t n, std::size_t p) {
      auto out  = construct_k(n, p);
      auto more = construct_k_star(n, p);
      out.insert(out.end(), more.begin(), more.end());
      return out;  // duplicates at p = 1 are removed by FamilySet
    }

    inline std::vector<Transformation> construct_e(std::size_t n, std::size_t p) {
      std::vector<Transformation> out;
      for (int i = 1; i + static_cast<int>(p) - 1 <= static_cast<int>(n); ++i) {
        out.push_back(idempotent_from(n, i, static_cast<int>(p) - 1));
      }
      return out;
    }

    template <typename Part>
    std::vector<Transformation> union_up_to(std::size_t n, std::size_t p,
                                            Part part) {
      std::vector<Transformation> out;
      for (std::size_t q = 1; q <= p; ++q) {
        auto v = part(n, q);
        out.insert(out.end(), v.begin(), v.end());
      }
      return out;
    }

    inline std::vector<Transformation>
    construct_family(FamilyId const& id, std::size_t n) {
      std::size_t const p = id.p ? static_cast<std::size_t>(*id.p) : n;
      switch (id.tag) {
        case FamilyTag::ct:
        case FamilyTag::oct:
        case FamilyTag::orct:
          throw Error(ErrorCode::unsupported_method,
                      "no closed form for " + to_spec(id) + "; use filter");
        case FamilyTag::k: return construct_k(n, p);
        case FamilyTag::k_star: return construct_k_star(n, p);
        case FamilyTag::j: return construct_j(n, p);
        case FamilyTag::e: return construct_e(n, p);
        case FamilyTag::l:
        case FamilyTag::reg_oct: return union_up_to(n, p, construct_k);
        case FamilyTag::m:
        case FamilyTag::reg_orct: return union_up_to(n, p, construct_j);
        case FamilyTag::e_oct:
        case FamilyTag::e_orct: return union_up_to(n, p, construct_e);
      }
      return {};
    }
  }  // namespace detail

  inline FamilySet enumerate(FamilyId const&         id,
                             std::size_t             n,
                             Method                  method,
                             EnumerateOptions const& opts = {}) {
    detail::check_parameter(id, n);
    if (n > kMaxDegree) {
      throw Error(ErrorCode::bad_parameter,
                  "degree above " + std::to_string(kMaxDegree));
    }
    if (method == Method::construct) {
      return FamilySet(id, n, detail::construct_family(id, n));
    }
    if (n > opts.scale_ceiling && !opts.force_scale) {
      throw Error(ErrorCode::scale_refusal,
                  "filter enumeration of " + std::to_string(n) + "^"
                      + std::to_string(n) + " maps exceeds the ceiling n = "
                      + std::to_string(opts.scale_ceiling)
                      + " (use --force-scale to override)");
    }
    return FamilySet(id, n, detail::filter_family(id, n, [&](FamilyTag tag) {
                       return detail::filter_ambient(tag, n, opts.jobs);
                     }));
  }

  inline FamilySet enumerate(std::string_view        spec,
                             std::size_t             n,
                             Method                  method,
                             EnumerateOptions const& opts = {}) {
    return enumerate(parse_family_spec(spec), n, method, opts);
  }

  // Memoizes the ambient filter sets per degree so that sweeps over many
  // subfamilies filter the n^n maps once.  Safe to share between threads.
  class FamilyEnumerator {
   public:
    explicit FamilyEnumerator(EnumerateOptions opts = {}) : _opts(opts) {}

    [[nodiscard]] EnumerateOptions const& options() const noexcept {
      return _opts;
    }

    FamilySet operator()(FamilyId const& id, std::size_t n, Method method) {
      if (method == Method::construct) {
        return enumerate(id, n, method, _opts);
      }
      detail::check_parameter(id, n);
      if (n > _opts.scale_ceiling && !_opts.force_scale) {
        // Raises the ScaleRefusal error.
        return enumerate(id, n, method, _opts);
      }
      return FamilySet(id, n, detail::filter_family(id, n, [&](FamilyTag tag) {
                         return ambient(tag, n);
                       }));
    }

   private:
    std::vector<Transformation> const& ambient(FamilyTag tag, std::size_t n) {
      std::lock_guard lock(_mtx);
      auto            key = std::make_pair(tag, n);
      auto            it  = _memo.find(key);
      if (it == _memo.end()) {
        std::vector<Transformation> v;
        if (tag == FamilyTag::reg_oct || tag == FamilyTag::reg_orct) {
          auto const& base = ambient_unlocked(
              tag == FamilyTag::reg_oct ? FamilyTag::oct : FamilyTag::orct, n);
          v = detail::regular_within(base);
        } else {
          v = detail::filter_ambient(tag, n, _opts.jobs);
        }
        it = _memo.emplace(key, std::move(v)).first;
      }
      return it->second;
    }

    std::vector<Transformation> const& ambient_unlocked(FamilyTag tag,
                                                        std::size_t n) {
      auto key = std::make_pair(tag, n);
      auto it  = _memo.find(key);
      if (it == _memo.end()) {
        it = _memo.emplace(key, detail::filter_ambient(tag, n, _opts.jobs)).first;
      }
      return it->second;
    }

    EnumerateOptions _opts;
    std::mutex       _mtx;
    std::map<std::pair<FamilyTag, std::size_t>, std::vector<Transformation>>
        _memo;
  };

  ////////////////////////////////////////////////////////////////////////
  // R- and L-classes by image and kernel
  ////////////////////////////////////////////////////////////////////////

  // R groups elements by image set and L by kernel partition, following the
  // naming used for the corner-element classes R_eta and L_delta.
  enum class ClassRelation { R, L };

  inline FamilySet class_of(Transformation const& a,
                            FamilySet const&      family,
                            ClassRelation         rel) {
    if (!family.contains(a)) {
      throw Error(ErrorCode::not_a_member,
                  format_transformation(a) + " is not in " + family.label());
    }
    std::vector<Transformation> out;
    if (rel == ClassRelation::R) {
      auto const im = image(a);
      for (auto const& b : family) {
        if (image(b) == im) {
          out.push_back(b);
        }
      }
    } else {
      auto const ker = kernel(a);
      for (auto const& b : family) {
        if (kernel(b) == ker) {
          out.push_back(b);
        }
      }
    }
    return FamilySet(std::nullopt, family.degree(), std::move(out));
  }

}  // namespace contractions

#endif  // CONTRACTIONS_FAMILIES_HPP_
