#ifndef CONTRACTIONS_CLAIMS_HPP_
#define CONTRACTIONS_CLAIMS_HPP_

// Every closed form and rank value that the tools check against, together
// with its range of validity.  Reports quote `statement` verbatim.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "error.hpp"
#include "families.hpp"
#include "genrank.hpp"

namespace contractions {

  enum class ClaimSource { formula, theorem, none };

  constexpr std::string_view to_string(ClaimSource s) noexcept {
    switch (s) {
      case ClaimSource::formula: return "formula";
      case ClaimSource::theorem: return "theorem";
      case ClaimSource::none: return "none";
    }
    return "none";
  }

  struct Claim {
    long long   value;
    ClaimSource source;
    std::string statement;
  };

  inline long long reg_oct_count(long long n) {
    return (n * (n - 1) * (2 * n - 1) + 6 * n) / 6;
  }

  // The rank-p idempotent count as first printed, n - p - 1.  It disagrees
  // with the summation that yields n(n+1)/2; counts are checked against
  // n - p + 1 and this value is reported alongside.
  inline long long printed_e_count(long long n, long long p) {
    return n - p - 1;
  }

  inline std::optional<Claim> count_claim(FamilyId const& id, std::size_t n_) {
    auto const n = static_cast<long long>(n_);
    auto const p = static_cast<long long>(id.p.value_or(0));
    switch (id.tag) {
      case FamilyTag::reg_oct:
        return Claim{reg_oct_count(n), ClaimSource::formula,
                     "|Reg(OCT_n)| = (n(n-1)(2n-1)+6n)/6"};
      case FamilyTag::reg_orct:
        return Claim{2 * reg_oct_count(n) - n, ClaimSource::formula,
                     "|Reg(ORCT_n)| = 2|Reg(OCT_n)| - n"};
      case FamilyTag::e_orct:
        return Claim{n * (n + 1) / 2, ClaimSource::formula,
                     "|E(ORCT_n)| = n(n+1)/2"};
      case FamilyTag::e_oct:
        return Claim{n * (n + 1) / 2, ClaimSource::formula,
                     "|E(OCT_n)| = |E(ORCT_n)| = n(n+1)/2"};
      case FamilyTag::k:
        if (p == 1) {
          return Claim{n, ClaimSource::formula, "|K_1| = n"};
        }
        return Claim{(n - p + 1) * (n - p + 1), ClaimSource::formula,
                     "|K_p| = (n-p+1)^2 for 2 <= p <= n"};
      case FamilyTag::e:
        return Claim{n - p + 1, ClaimSource::formula,
                     "|E_p| = n-p+1 (printed as n-p-1)"};
      default: return std::nullopt;
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Rank targets
  ////////////////////////////////////////////////////////////////////////

  enum class RankKind { l, m, reg_oct, reg_orct, e_orct, q, w };

  struct RankSpec {
    RankKind           kind;
    std::optional<int> p;

    [[nodiscard]] std::string to_string() const {
      std::string s;
      switch (kind) {
        case RankKind::l: s = "l"; break;
        case RankKind::m: s = "m"; break;
        case RankKind::reg_oct: s = "reg-oct"; break;
        case RankKind::reg_orct: s = "reg-orct"; break;
        case RankKind::e_orct: s = "e-orct"; break;
        case RankKind::q: s = "q"; break;
        case RankKind::w: s = "w"; break;
      }
      if (p) {
        s += ':' + std::to_string(*p);
      }
      return s;
    }
  };

  // l:<p>, m:<p>, reg-oct, reg-orct, e-orct, q:<p> (Rees quotient on K_p),
  // w:<p> (Rees quotient on J_p).
  inline RankSpec parse_rank_spec(std::string_view spec) {
    auto colon = spec.find(':');
    auto head  = spec.substr(0, colon);
    auto param = [&]() -> int {
      if (colon == std::string_view::npos) {
        throw Error(ErrorCode::syntax_error,
                    "rank family \"" + std::string(head) + "\" needs :<p>");
      }
      auto p = detail::parse_int(spec.substr(colon + 1));
      if (!p) {
        throw Error(ErrorCode::syntax_error,
                    "bad parameter in \"" + std::string(spec) + "\"");
      }
      return *p;
    };
    auto plain = [&](RankKind k) {
      if (colon != std::string_view::npos) {
        throw Error(ErrorCode::syntax_error,
                    "rank family \"" + std::string(head)
                        + "\" takes no parameter");
      }
      return RankSpec{k, std::nullopt};
    };
    if (head == "l") return {RankKind::l, param()};
    if (head == "m") return {RankKind::m, param()};
    if (head == "q") return {RankKind::q, param()};
    if (head == "w") return {RankKind::w, param()};
    if (head == "reg-oct") return plain(RankKind::reg_oct);
    if (head == "reg-orct") return plain(RankKind::reg_orct);
    if (head == "e-orct") return plain(RankKind::e_orct);
    throw Error(ErrorCode::syntax_error,
                "unknown rank family \"" + std::string(spec) + "\"");
  }

  struct RankTarget {
    FamilySet   set;
    Mode        mode;
    std::string label;
  };

  // The family whose (Rees quotient) rank a spec asks for.
  inline std::pair<FamilyId, Mode> rank_family(RankSpec const& spec) {
    auto const pp = static_cast<std::size_t>(spec.p.value_or(0));
    switch (spec.kind) {
      case RankKind::l: return {{FamilyTag::l, spec.p}, plain_mode};
      case RankKind::m: return {{FamilyTag::m, spec.p}, plain_mode};
      case RankKind::reg_oct: return {{FamilyTag::reg_oct, {}}, plain_mode};
      case RankKind::reg_orct: return {{FamilyTag::reg_orct, {}}, plain_mode};
      case RankKind::e_orct: return {{FamilyTag::e_orct, {}}, plain_mode};
      case RankKind::q: return {{FamilyTag::k, spec.p}, rees_mode(pp)};
      case RankKind::w: return {{FamilyTag::j, spec.p}, rees_mode(pp)};
    }
    throw Error(ErrorCode::bad_parameter, "unknown rank family");
  }

  inline RankTarget make_rank_target(RankSpec const&         spec,
                                     std::size_t             n,
                                     Method                  method,
                                     EnumerateOptions const& opts = {}) {
    auto const [id, mode] = rank_family(spec);
    return {enumerate(id, n, method, opts), mode, spec.to_string()};
  }

  // Claimed semigroup rank, when one applies at (n, p).  `note` explains
  // rows that carry no claim.
  struct RankClaim {
    std::optional<Claim> claim;
    std::string          note;
  };

  inline RankClaim rank_claim(RankSpec const& spec, std::size_t n_) {
    auto const n  = static_cast<long long>(n_);
    auto const p  = static_cast<long long>(spec.p.value_or(0));
    auto const no = [](std::string note) {
      return RankClaim{std::nullopt, std::move(note)};
    };
    constexpr auto kNone = "computed, no claim in range";
    switch (spec.kind) {
      case RankKind::l:
        if (n >= 4 && 1 < p && p <= n - 1) {
          return {Claim{2 * (n - p), ClaimSource::theorem,
                        "rank L(n,p) = 2(n-p) for n >= 4, 1 < p <= n-1"},
                  ""};
        }
        return no(kNone);
      case RankKind::m:
        if (n >= 4 && 2 < p && p <= n - 1) {
          return {Claim{2 * (n - p) + 1, ClaimSource::theorem,
                        "rank M(n,p) = 2(n-p)+1 for n >= 4, 2 < p <= n-1"},
                  ""};
        }
        return no(kNone);
      case RankKind::reg_oct:
        if (n >= 4) {
          return {Claim{3, ClaimSource::theorem, "rank Reg(OCT_n) = 3, n >= 4"},
                  ""};
        }
        return no(kNone);
      case RankKind::reg_orct:
        if (n >= 4) {
          return {Claim{4, ClaimSource::theorem,
                        "rank Reg(ORCT_n) = 4, n >= 4"},
                  ""};
        }
        return no(kNone);
      case RankKind::q:
        if (n >= 4 && 2 <= p && p <= n - 1) {
          return no("computed, no rank claim; (R_eta u L_delta)\\delta of size "
                    + std::to_string(2 * (n - p))
                    + " is claimed irredundant, not minimum");
        }
        return no(kNone);
      case RankKind::w:
        if (n >= 4 && 2 < p && p <= n - 1) {
          return no("computed, no rank claim; (R_eta u L_delta*)\\delta of "
                    "size "
                    + std::to_string(2 * (n - p) + 1)
                    + " is claimed irredundant, not minimum");
        }
        return no(kNone);
      case RankKind::e_orct:
        return no("computed, no claim; reference value 3 is stated without "
                  "proof and is not checked");
    }
    return no(kNone);
  }

}  // namespace contractions

#endif  // CONTRACTIONS_CLAIMS_HPP_
