#include "entsep/separability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "detail/rank_one.hpp"
#include "entsep/error.hpp"

namespace entsep {

namespace {

void require_nonzero(const AmplitudeTensor& t) {
  if (!(t.norm() > 0.0)) throw PreconditionError("zero tensor has no separability verdict");
}

AmplitudeTensor to_tensor(const Eigen::VectorXcd& v, std::vector<std::size_t> dims) {
  return AmplitudeTensor(std::move(dims), std::vector<Complex>(v.data(), v.data() + v.size()));
}

std::vector<std::size_t> dims_of(const AmplitudeTensor& t, const std::vector<std::size_t>& parties) {
  std::vector<std::size_t> dims;
  dims.reserve(parties.size());
  for (std::size_t p : parties) dims.push_back(t.dim(p));
  return dims;
}

// Advances `comb` (strictly increasing, values < n) to the next combination in
// lexicographic order. Returns false after the last one.
bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
  const std::size_t k = comb.size();
  for (std::size_t i = k; i-- > 0;) {
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

struct Piece {
  std::vector<std::size_t> parties;  // original party labels, ascending
  AmplitudeTensor tensor;
};

void split_piece(Piece piece, double tol, std::vector<Piece>& out) {
  const std::size_t m = piece.parties.size();
  for (std::size_t size = 1; size <= m / 2; ++size) {
    std::vector<std::size_t> subset(size);
    std::iota(subset.begin(), subset.end(), std::size_t{0});
    do {
      const UnfoldingMatrix u = unfold(piece.tensor, subset);
      if (!detail::check_rank_one(u.matrix, tol, false).rank_one) continue;

      const detail::RankOneFactor f = detail::dominant_rank_one(u.matrix);
      std::vector<std::size_t> left_parties, right_parties;
      for (std::size_t p : u.row_parties) left_parties.push_back(piece.parties[p]);
      for (std::size_t p : u.col_parties) right_parties.push_back(piece.parties[p]);
      split_piece({std::move(left_parties), to_tensor(f.left, dims_of(piece.tensor, u.row_parties))},
                  tol, out);
      split_piece({std::move(right_parties), to_tensor(f.right, dims_of(piece.tensor, u.col_parties))},
                  tol, out);
      return;
    } while (next_combination(subset, m));
  }
  out.push_back(std::move(piece));
}

double wrap_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  if (phi >= two_pi) phi = 0.0;
  return phi;
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
  return v == Verdict::separable ? "separable" : "entangled";
}

double scaled_minor(const MinorView& m, double zero_line_norm) noexcept {
  if (m.norm_a <= zero_line_norm || m.norm_b <= zero_line_norm) return 0.0;
  return std::abs(m.det) / (m.norm_a * m.norm_b + detail::norm_floor);
}

SeparabilityVerdict is_separable_minors(const AmplitudeTensor& t, double tol) {
  require_nonzero(t);
  const double zero = zero_line_norm(t, tol);

  SeparabilityVerdict out;
  out.tol = tol;
  std::optional<MinorView> best;
  visit_all_minors(t, [&](const MinorView& m) {
    const double v = scaled_minor(m, zero);
    if (!best || v > out.max_scaled_minor) {
      out.max_scaled_minor = v;
      best = m;
    }
  });
  if (best) out.witness = to_minor(t, *best);
  out.verdict = out.max_scaled_minor <= tol ? Verdict::separable : Verdict::entangled;
  return out;
}

PartyFactorResult factor_out_party(const AmplitudeTensor& t, std::size_t party, double tol) {
  if (t.n_parties() < 2) throw PreconditionError("factoring a party needs at least two parties");
  if (party >= t.n_parties()) throw BoundsError("party " + std::to_string(party) + " out of range");
  require_nonzero(t);

  const std::size_t rows[] = {party};
  const UnfoldingMatrix u = unfold(t, rows);
  const detail::RankOneCheck check = detail::check_rank_one(u.matrix, tol, true);

  PartyFactorResult out;
  out.max_scaled_minor = check.max_scaled_minor;
  if (!check.rank_one) return out;

  const detail::RankOneFactor f = detail::dominant_rank_one(u.matrix);
  out.value = PartyFactorization{party, to_tensor(f.left, {t.dim(party)}),
                                 to_tensor(f.right, dims_of(t, u.col_parties))};
  return out;
}

EntanglementStructure entanglement_structure(const AmplitudeTensor& t, double tol) {
  if (t.n_parties() > max_structure_parties)
    throw ResourceError("structure search supports at most " +
                        std::to_string(max_structure_parties) + " parties, got " +
                        std::to_string(t.n_parties()));
  require_nonzero(t);

  std::vector<std::size_t> everyone(t.n_parties());
  std::iota(everyone.begin(), everyone.end(), std::size_t{0});
  Piece whole{std::move(everyone), t};

  std::vector<Piece> pieces;
  split_piece(std::move(whole), tol, pieces);
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return a.parties.front() < b.parties.front(); });

  EntanglementStructure out;
  Complex carried = 1.0;
  for (Piece& p : pieces) {
    const double len = p.tensor.norm();
    const Complex phase = detail::anchor_phase(p.tensor.data());
    const Complex c = len * phase;
    carried *= c;
    out.blocks.push_back(std::move(p.parties));
    out.factors.push_back(p.tensor.scaled(1.0 / c));
  }
  out.scale = std::abs(carried);
  out.global_phase = wrap_phase(std::arg(carried));
  return out;
}

AmplitudeTensor assemble(const EntanglementStructure& s) {
  if (s.factors.empty() || s.factors.size() != s.blocks.size())
    throw ValidationError("structure has mismatched blocks and factors");

  AmplitudeTensor product = s.factors.front();
  std::vector<std::size_t> labels = s.blocks.front();
  for (std::size_t b = 1; b < s.factors.size(); ++b) {
    product = tensor_product(product, s.factors[b]);
    labels.insert(labels.end(), s.blocks[b].begin(), s.blocks[b].end());
  }
  std::vector<std::size_t> order(labels.size());
  for (std::size_t pos = 0; pos < labels.size(); ++pos) {
    if (labels[pos] >= order.size()) throw ValidationError("structure blocks are not a partition");
    order[labels[pos]] = pos;
  }
  return permute_parties(product, order).scaled(std::polar(s.scale, s.global_phase));
}

FullFactorizationResult full_factorization(const AmplitudeTensor& t, double tol) {
  require_nonzero(t);
  if (!t.normalized(tol))
    throw PreconditionError("full factorization needs a unit-norm state (norm " +
                            std::to_string(t.norm()) + ")");

  EntanglementStructure s = entanglement_structure(t, tol);
  FullFactorizationResult out;
  for (const auto& block : s.blocks) {
    if (block.size() > 1) {
      out.irreducible_block = block;
      return out;
    }
  }
  out.value = FullFactorization{std::move(s.factors), s.global_phase};
  return out;
}

}  // namespace entsep
