#ifndef CONTRACTIONS_CONTRACTIONS_HPP_
#define CONTRACTIONS_CONTRACTIONS_HPP_

#include "error.hpp"           // IWYU pragma: export
#include "transformation.hpp"  // IWYU pragma: export
#include "families.hpp"        // IWYU pragma: export
#include "product_table.hpp"   // IWYU pragma: export
#include "genrank.hpp"         // IWYU pragma: export
#include "greens.hpp"          // IWYU pragma: export
#include "claims.hpp"          // IWYU pragma: export
#include "report.hpp"          // IWYU pragma: export
#include "cache.hpp"           // IWYU pragma: export

#endif  // CONTRACTIONS_CONTRACTIONS_HPP_
