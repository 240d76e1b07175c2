#pragma once

// Dual certificates for the majority families.
//
// maj:   weights a on singleton cells, 0 on 3-index cells, b elsewhere; one
//        clique per 3x3 MAJ_3-like submatrix (a triple of variables with the
//        remaining ones fixed) at multiplier 2b.
// urec:  on S_h, tangency weights on the block ALL-S_1 (the rows and columns
//        of every S_1 copy), weight 1/k* on the border cells X'/Y' of every
//        S_l copy, non-singleton cells of the S_1 copies moved to 0 with one
//        clique per copy at 2b.
// brec:  tangency weights on singletons and non-singletons, the non-singleton
//        cells of every S_2 copy moved to 0 with its 12 cliques and one rank
//        group at 2b.
//
// cert_urec/cert_brec verify the scheme and, when it is rejected, solve the
// strengthened LP over the same clique and rank families instead.

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kwbound/boolean.hpp"
#include "kwbound/certificate.hpp"
#include "kwbound/comm_matrix.hpp"
#include "kwbound/cutting_plane.hpp"
#include "kwbound/error.hpp"
#include "kwbound/rational.hpp"
#include "kwbound/submatrices.hpp"
#include "kwbound/tangency.hpp"

namespace kwb {

// For a block of rows x cols: one generator pair per index whose singleton
// cells inside the block number exactly two, ordered by index.
inline std::vector<CellPair> singleton_pairs(const CommMatrix& m, const std::vector<int>& rows,
                                             const std::vector<int>& cols) {
  std::map<IndexMask, std::vector<CellRef>> by_index;
  for (int r : rows)
    for (int c : cols)
      if (std::has_single_bit(m.cell(r, c))) by_index[m.cell(r, c)].push_back(m.ref(r, c));
  std::vector<CellPair> out;
  for (const auto& [mask, cells] : by_index)
    if (cells.size() == 2) out.push_back({cells[0], cells[1]});
  return out;
}

inline std::vector<int> line_range(int first, int count) {
  std::vector<int> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = first + i;
  return v;
}

// ---------------------------------------------------------------- MAJ_3

inline CommMatrix maj_matrix(int l) {
  require(l >= 1 && l <= 5, "maj_matrix: l must be 1..5");
  CommMatrix m = build_matrix(maj(2 * l + 1), Mode::General, Restriction::terms());
  m.set_provenance("maj n=" + std::to_string(2 * l + 1) + " terms general");
  return m;
}

inline DualCertificate cert_maj3() {
  const CommMatrix m = maj_matrix(1);
  DualCertificate cert = DualCertificate::zero(m, m.provenance());
  for (const auto& s : singleton_cells(m)) cert.set(s.cell, Rational(1));
  cert.cliques.push_back({singleton_pairs(m, {0, 1, 2}, {0, 1, 2}), Rational(-1)});
  cert.objective = certificate_objective(cert);
  return cert;
}

// ---------------------------------------------------------------- MAJ_{2l+1}

inline Rational maj_kstar(int l) {
  const Rational terms = binomial(static_cast<unsigned>(2 * l + 1), static_cast<unsigned>(l));
  return terms / Rational(l + 1) - Rational(l * l, 6);
}

// (l+1)^2 / (1 - eps(l)) with eps(l) = l^2 (l+1) / (6 C(2l+1, l)).
inline Rational maj_declared_objective(int l) {
  const Rational terms = binomial(static_cast<unsigned>(2 * l + 1), static_cast<unsigned>(l));
  const Rational eps = Rational(l * l * (l + 1)) / (Rational(6) * terms);
  return Rational((l + 1) * (l + 1)) / (Rational(1) - eps);
}

// Every 3x3 submatrix spanned by a variable triple: rows set two of the
// triple, columns set one, and the other 2l-2 variables are fixed to an
// assignment with l-1 ones.
inline std::vector<std::pair<std::vector<int>, std::vector<int>>> maj_triple_blocks(const CommMatrix& m, int l) {
  const int n = 2 * l + 1;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const std::uint32_t triple = (1u << i) | (1u << j) | (1u << k);
        for (std::uint32_t base = 0; base < (1u << n); ++base) {
          if ((base & triple) || std::popcount(base) != l - 1) continue;
          std::vector<int> rows, cols;
          for (std::uint32_t two : {(1u << i) | (1u << j), (1u << i) | (1u << k), (1u << j) | (1u << k)})
            rows.push_back(m.row_index(BitVector(n, base | two)));
          for (std::uint32_t one : {1u << i, 1u << j, 1u << k}) cols.push_back(m.col_index(BitVector(n, base | one)));
          std::sort(rows.begin(), rows.end());
          std::sort(cols.begin(), cols.end());
          out.push_back({rows, cols});
        }
      }
  return out;
}

inline DualCertificate cert_maj(int l) {
  require(l >= 1 && l <= 3, "cert_maj: l must be 1..3");
  if (l == 1) return cert_maj3();
  const CommMatrix m = maj_matrix(l);
  const TangencyScheme t = TangencyScheme::at(maj_kstar(l));
  DualCertificate cert = DualCertificate::zero(m, m.provenance());
  for (int r = 0; r < m.num_rows(); ++r)
    for (int c = 0; c < m.num_cols(); ++c) {
      const int size = std::popcount(m.cell(r, c));
      cert.set(m.ref(r, c), size == 1 ? t.a() : size == 3 ? Rational(0) : t.b());
    }
  for (const auto& [rows, cols] : maj_triple_blocks(m, l)) cert.cliques.push_back({singleton_pairs(m, rows, cols), t.c()});
  cert.objective = maj_declared_objective(l);
  return cert;
}

// ---------------------------------------------------------------- BRecMAJ_3^2

// The 12 cliques of the 9x9 submatrix, as pairs of cell serials.
inline const std::array<std::array<std::pair<int, int>, 3>, 12>& brec2_clique_serials() {
  static const std::array<std::array<std::pair<int, int>, 3>, 12> kCliques = {{
      {{{5, 15}, {4, 24}, {13, 23}}},   {{{35, 45}, {34, 54}, {43, 53}}}, {{{2, 12}, {1, 21}, {10, 20}}},
      {{{62, 72}, {61, 81}, {70, 80}}}, {{{29, 39}, {28, 48}, {37, 47}}}, {{{59, 69}, {58, 78}, {67, 77}}},
      {{{5, 35}, {2, 62}, {29, 59}}},   {{{15, 45}, {12, 72}, {39, 69}}}, {{{4, 34}, {1, 61}, {28, 58}}},
      {{{24, 54}, {21, 81}, {48, 78}}}, {{{13, 43}, {10, 70}, {37, 67}}}, {{{23, 53}, {20, 80}, {47, 77}}},
  }};
  return kCliques;
}

inline const std::array<std::pair<int, int>, 18>& brec2_rank_serials() {
  static const std::array<std::pair<int, int>, 18> kPairs = {{
      {5, 45},  {15, 35}, {4, 54},  {24, 34}, {13, 53}, {23, 43}, {2, 72},  {12, 62}, {1, 81},
      {21, 61}, {10, 80}, {20, 70}, {29, 69}, {39, 59}, {28, 78}, {48, 58}, {37, 77}, {47, 67},
  }};
  return kPairs;
}

inline constexpr std::array<int, 9> kBrec2Witness = {9, 17, 25, 33, 41, 49, 57, 65, 73};
inline constexpr int kBrec2Alpha = 4;

// Clique and rank families of one 9x9 S_2 copy whose top-left cell sits at
// (row0, col0) of `m`.
inline std::pair<std::vector<CliqueSpec>, RankSpec> brec2_groups(const CommMatrix& m, int row0, int col0,
                                                                 const Rational& z) {
  auto global = [&](int local) { return m.ref(row0 + (local - 1) / 9, col0 + (local - 1) % 9); };
  std::vector<CliqueSpec> cliques;
  for (const auto& q : brec2_clique_serials()) {
    CliqueSpec spec{{}, z};
    for (const auto& [a, b] : q) spec.pairs.push_back({global(a), global(b)});
    cliques.push_back(std::move(spec));
  }
  RankSpec rank{{}, kBrec2Alpha, {}, z};
  for (const auto& [a, b] : brec2_rank_serials()) rank.pairs.push_back({global(a), global(b)});
  for (int w : kBrec2Witness) rank.witness.push_back(global(w));
  return {std::move(cliques), std::move(rank)};
}

inline DualCertificate cert_brec2() {
  const CommMatrix m = brec2_submatrix().first;
  DualCertificate cert = DualCertificate::zero(m, m.provenance());
  for (const auto& s : singleton_cells(m)) cert.set(s.cell, Rational(1));
  auto [cliques, rank] = brec2_groups(m, 0, 0, Rational(-1));
  cert.cliques = std::move(cliques);
  cert.ranks.push_back(std::move(rank));
  cert.objective = certificate_objective(cert);
  return cert;
}

// ---------------------------------------------------------------- schemes with fallback

struct SchemeResult {
  CommMatrix matrix;
  SubmatrixSpec spec;
  DualCertificate scheme;  // as constructed
  Rational declared;       // closed-form target of the scheme
  VerifyResult verification;
  std::optional<BoundResult> fallback;  // strengthened LP when the scheme is rejected
  std::vector<std::string> notes;

  bool scheme_verified() const { return verification.feasible; }
  // A rejected scheme divided by its largest rectangle value is still dual
  // feasible (all multipliers are <= 0), so it certifies objective / max.
  Rational scaled() const {
    if (scheme_verified()) return verification.objective;
    if (verification.max_rect_value.sign() <= 0 || !multipliers_ok()) return Rational(0);
    return verification.objective / verification.max_rect_value;
  }
  // The lower bound actually certified on the submatrix.
  Rational certified() const {
    if (scheme_verified()) return verification.objective;
    Rational best = scaled();
    if (fallback && fallback->lower > best) best = fallback->lower;
    return best;
  }
  bool multipliers_ok() const {
    for (const auto& v : verification.violations)
      if (v.kind != "rectangle" && v.kind != "objective") return false;
    return true;
  }
  // The certificate behind certified().
  DualCertificate certificate() const {
    if (scheme_verified()) return scheme;
    if (fallback && fallback->lower >= scaled()) return fallback->certificate;
    DualCertificate cert = scheme;
    const Rational s = verification.max_rect_value;
    if (scaled().sign() <= 0) return cert;
    for (auto& w : cert.weights) w = w / s;
    for (auto& q : cert.cliques) q.z = q.z / s;
    for (auto& g : cert.ranks) g.z = g.z / s;
    cert.objective = certificate_objective(cert);
    return cert;
  }
};

inline Rational urec_declared_objective(int h) {
  return Rational(4 * h) + Rational(8, 9) / pow(Rational(2), static_cast<unsigned>(h));
}

inline Rational brec_declared_objective(int h) {
  return pow(Rational(4), static_cast<unsigned>(h)) +
         Rational(13, 36) * pow(Rational(8, 3), static_cast<unsigned>(h));
}

namespace detail {

struct UrecParts {
  DualCertificate cert;
  std::vector<CliqueSpec> cliques;
  std::vector<std::string> notes;
};

inline UrecParts urec_scheme_parts(const CommMatrix& m, const SubmatrixSpec& spec, int h) {
  const Rational kstar = Rational(3) * pow(Rational(2), static_cast<unsigned>(h)) / Rational(4);
  const TangencyScheme t = TangencyScheme::at(kstar);
  UrecParts out{DualCertificate::zero(m, m.provenance()), {}, {}};
  const auto copies = spec.blocks_of("S", 1);
  std::set<int> all_rows, all_cols;
  std::set<std::pair<int, int>> in_copy;
  for (const auto& b : copies)
    for (int r = b.row0; r < b.row0 + b.nrows; ++r)
      for (int c = b.col0; c < b.col0 + b.ncols; ++c) {
        all_rows.insert(r);
        all_cols.insert(c);
        in_copy.insert({r, c});
      }
  for (int r : all_rows)
    for (int c : all_cols) {
      const bool single = std::has_single_bit(m.cell(r, c));
      out.cert.set(m.ref(r, c), single ? t.a() : in_copy.contains({r, c}) ? Rational(0) : t.b());
    }
  for (const auto& b : copies)
    out.cliques.push_back({singleton_pairs(m, line_range(b.row0, b.nrows), line_range(b.col0, b.ncols)), t.c()});
  // border cells of every S_l copy, l >= 2
  const Rational border = Rational(1) / kstar;
  for (int l = 2; l <= h; ++l) {
    std::array<std::vector<CellRef>, 4> sets;  // X_{2l}, X_{2l+1}, Y_{2l}, Y_{2l+1}
    for (const auto& b : spec.blocks_of("S", l)) {
      const int s = (b.nrows - 1) / 2;
      for (int r : line_range(b.row0 + 1 + s, s))  // "10" rows x "00" column
        if (all_rows.contains(r)) sets[0].push_back(m.ref(r, b.col0));
      for (int r : line_range(b.row0 + 1, s))  // "01" rows x "00" column
        if (all_rows.contains(r)) sets[1].push_back(m.ref(r, b.col0));
      for (int c : line_range(b.col0 + 1 + s, s))  // "11" row x "01" columns
        if (all_cols.contains(c)) sets[2].push_back(m.ref(b.row0, c));
      for (int c : line_range(b.col0 + 1, s))  // "11" row x "10" columns
        if (all_cols.contains(c)) sets[3].push_back(m.ref(b.row0, c));
    }
    const int want = 3 * (1 << (h - 2));
    const int index[4] = {2 * l, 2 * l + 1, 2 * l, 2 * l + 1};
    for (int k = 0; k < 4; ++k) {
      if (static_cast<int>(sets[static_cast<std::size_t>(k)].size()) != want)
        out.notes.push_back("level " + std::to_string(l) + ": border set of size " +
                            std::to_string(sets[static_cast<std::size_t>(k)].size()) + ", expected " +
                            std::to_string(want));
      int non_singleton = 0;
      for (const auto& c : sets[static_cast<std::size_t>(k)]) {
        if (m.cell(c) != index_bit(index[k])) ++non_singleton;
        out.cert.set(c, border);
      }
      if (non_singleton > 0)
        out.notes.push_back("level " + std::to_string(l) + ": " + std::to_string(non_singleton) +
                            " border cells are not {" + std::to_string(index[k]) + "}-singletons");
    }
    // the border rows and columns must reach every row and column of ALL-S_1
    std::set<int> rows, cols;
    for (int k : {0, 1})
      for (const auto& c : sets[static_cast<std::size_t>(k)]) rows.insert(m.position(c).first);
    for (int k : {2, 3})
      for (const auto& c : sets[static_cast<std::size_t>(k)]) cols.insert(m.position(c).second);
    if (rows != all_rows || cols != all_cols)
      out.notes.push_back("level " + std::to_string(l) + ": border cells do not span ALL-S_1");
  }
  out.cert.cliques = out.cliques;
  out.cert.objective = urec_declared_objective(h);
  return out;
}

struct BrecParts {
  DualCertificate cert;
  std::vector<CliqueSpec> cliques;
  std::vector<RankSpec> ranks;
};

inline BrecParts brec_scheme_parts(const CommMatrix& m, const SubmatrixSpec& spec, int h) {
  const Rational kstar = pow(Rational(3, 2), static_cast<unsigned>(h));
  const TangencyScheme t = TangencyScheme::at(kstar);
  BrecParts out{DualCertificate::zero(m, m.provenance()), {}, {}};
  std::set<std::pair<int, int>> in_copy;
  const auto copies = h == 1 ? std::vector<MatrixBlock>{} : spec.blocks_of("S", 2);
  for (const auto& b : copies) {
    for (int r = b.row0; r < b.row0 + b.nrows; ++r)
      for (int c = b.col0; c < b.col0 + b.ncols; ++c) in_copy.insert({r, c});
    auto [cliques, rank] = brec2_groups(m, b.row0, b.col0, t.c());
    out.cliques.insert(out.cliques.end(), cliques.begin(), cliques.end());
    out.ranks.push_back(std::move(rank));
  }
  for (int r = 0; r < m.num_rows(); ++r)
    for (int c = 0; c < m.num_cols(); ++c) {
      const bool single = std::has_single_bit(m.cell(r, c));
      out.cert.set(m.ref(r, c), single ? t.a() : in_copy.contains({r, c}) ? Rational(0) : t.b());
    }
  out.cert.cliques = out.cliques;
  out.cert.ranks = out.ranks;
  // at h = 1 there are no cliques and the weights sum to 6a + 3b = 4
  out.cert.objective = h == 1 ? certificate_objective(out.cert) : brec_declared_objective(h);
  return out;
}

}  // namespace detail

inline DualCertificate urec_scheme(int h, Mode mode = Mode::General) {
  require(h >= 2 && h <= 4, "urec_scheme: h must be 2..4");
  auto [m, spec] = urec_submatrix(h, mode);
  return detail::urec_scheme_parts(m, spec, h).cert;
}

inline DualCertificate brec_scheme(int h) {
  require(h >= 1 && h <= 3, "brec_scheme: h must be 1..3");
  auto [m, spec] = brec_submatrix(h);
  return detail::brec_scheme_parts(m, spec, h).cert;
}

inline SchemeResult cert_urec(int h, Mode mode = Mode::General, const BoundOptions& opts = {}) {
  require(h >= 2 && h <= 3, "cert_urec: h must be 2..3");
  auto [m, spec] = urec_submatrix(h, mode);
  auto parts = detail::urec_scheme_parts(m, spec, h);
  SchemeResult res{m, spec, parts.cert, urec_declared_objective(h), {}, std::nullopt, parts.notes};
  res.verification = verify_certificate(m, parts.cert, opts.oracle);
  if (!res.verification.feasible) {
    std::vector<CliqueSpec> cliques = parts.cliques;
    for (auto& q : cliques) q.z = Rational(0);
    res.fallback = strengthened_bound(m, cliques, {}, opts);
    res.notes.push_back("scheme rejected; solved the strengthened LP with the S_1 cliques");
  }
  return res;
}

inline SchemeResult cert_brec(int h, const BoundOptions& opts = {}) {
  require(h >= 1 && h <= 3, "cert_brec: h must be 1..3");
  auto [m, spec] = brec_submatrix(h);
  auto parts = detail::brec_scheme_parts(m, spec, h);
  SchemeResult res{m, spec, parts.cert, brec_declared_objective(h), {}, std::nullopt, {}};
  res.verification = verify_certificate(m, parts.cert, opts.oracle);
  if (!res.verification.feasible) {
    std::vector<CliqueSpec> cliques = parts.cliques;
    std::vector<RankSpec> ranks = parts.ranks;
    for (auto& q : cliques) q.z = Rational(0);
    for (auto& g : ranks) g.z = Rational(0);
    res.fallback = strengthened_bound(m, cliques, ranks, opts);
    res.notes.push_back("scheme rejected; solved the strengthened LP with the S_2 cliques and rank groups");
  }
  return res;
}

}  // namespace kwb
