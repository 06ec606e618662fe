#include "oklab/detail/dense_counter.hpp"

#include "oklab/error.hpp"
#include "oklab/memory_guard.hpp"

#include <algorithm>

namespace oklab::detail {

namespace {

struct Piece {
  bool empty = true;
  IntPoint lo, hi;
  std::size_t rows = 0;           // product of extents of all but the last coordinate
  std::size_t row_bits = 0;       // extent of the last coordinate
  std::size_t row_words = 0;
  std::vector<std::uint64_t> bits;
};

void or_shifted(const std::uint64_t* src, std::size_t src_words, std::uint64_t* dst, std::size_t dst_words,
                std::size_t offset) {
  const std::size_t word = offset / 64;
  const unsigned bit = static_cast<unsigned>(offset % 64);
  if (bit == 0) {
    for (std::size_t j = 0; j < src_words && word + j < dst_words; ++j) dst[word + j] |= src[j];
    return;
  }
  for (std::size_t j = 0; j < src_words; ++j) {
    const std::uint64_t w = src[j];
    if (w == 0) continue;
    if (word + j < dst_words) dst[word + j] |= w << bit;
    if (word + j + 1 < dst_words) dst[word + j + 1] |= w >> (64 - bit);
  }
}

}  // namespace

std::vector<std::uint64_t> dense_piece_counts(std::size_t r, const std::vector<IntPoint>& values,
                                              const std::vector<std::int64_t>& degrees, std::int64_t t_max) {
  const std::size_t ngen = values.size();
  std::int64_t max_deg = 1;
  for (auto d : degrees) {
    if (d < 1) fail(ErrorKind::Validation, "dense_piece_counts", "generator of degree " + std::to_string(d));
    max_deg = std::max(max_deg, d);
  }
  const auto ring = static_cast<std::size_t>(max_deg + 1);
  std::vector<Piece> pieces(ring);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(t_max + 1), 0);
  const std::size_t lead = r == 0 ? 0 : r - 1;

  for (std::int64_t t = 0; t <= t_max; ++t) {
    Piece& cur = pieces[static_cast<std::size_t>(t) % ring];
    cur = Piece{};
    if (t == 0) {
      cur.empty = false;
      cur.lo.assign(r, 0);
      cur.hi.assign(r, 0);
    } else {
      for (std::size_t g = 0; g < ngen; ++g) {
        if (degrees[g] > t) continue;
        const Piece& src = pieces[static_cast<std::size_t>(t - degrees[g]) % ring];
        if (src.empty) continue;
        if (cur.empty) {
          cur.empty = false;
          cur.lo.assign(r, 0);
          cur.hi.assign(r, 0);
          for (std::size_t i = 0; i < r; ++i) {
            cur.lo[i] = src.lo[i] + values[g][i];
            cur.hi[i] = src.hi[i] + values[g][i];
          }
        } else {
          for (std::size_t i = 0; i < r; ++i) {
            cur.lo[i] = std::min(cur.lo[i], src.lo[i] + values[g][i]);
            cur.hi[i] = std::max(cur.hi[i], src.hi[i] + values[g][i]);
          }
        }
      }
    }
    if (cur.empty) continue;

    cur.rows = 1;
    for (std::size_t i = 0; i < lead; ++i) cur.rows *= static_cast<std::size_t>(cur.hi[i] - cur.lo[i] + 1);
    cur.row_bits = r == 0 ? 1 : static_cast<std::size_t>(cur.hi[r - 1] - cur.lo[r - 1] + 1);
    cur.row_words = (cur.row_bits + 63) / 64;
    std::size_t live = 0;
    for (const auto& p : pieces) live += p.bits.size();
    require_memory((live + cur.rows * cur.row_words) * sizeof(std::uint64_t), "graded_piece",
                   "degree " + std::to_string(t));
    cur.bits.assign(cur.rows * cur.row_words, 0);

    if (t == 0) {
      cur.bits[0] = 1;
    } else {
      IntPoint idx(lead, 0);
      for (std::size_t g = 0; g < ngen; ++g) {
        if (degrees[g] > t) continue;
        const Piece& src = pieces[static_cast<std::size_t>(t - degrees[g]) % ring];
        if (src.empty) continue;
        const std::size_t offset =
            r == 0 ? 0 : static_cast<std::size_t>(src.lo[r - 1] + values[g][r - 1] - cur.lo[r - 1]);
        std::fill(idx.begin(), idx.end(), 0);
        for (std::size_t row = 0; row < src.rows; ++row) {
          // Destination row index in cur's mixed radix.
          std::size_t dst_row = 0;
          for (std::size_t i = 0; i < lead; ++i) {
            const auto coord = idx[i] + src.lo[i] + values[g][i] - cur.lo[i];
            dst_row = dst_row * static_cast<std::size_t>(cur.hi[i] - cur.lo[i] + 1) + static_cast<std::size_t>(coord);
          }
          or_shifted(src.bits.data() + row * src.row_words, src.row_words, cur.bits.data() + dst_row * cur.row_words,
                     cur.row_words, offset);
          for (std::size_t i = lead; i-- > 0;) {
            if (++idx[i] <= src.hi[i] - src.lo[i]) break;
            idx[i] = 0;
          }
        }
      }
    }
    std::uint64_t c = 0;
    for (auto w : cur.bits) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
    counts[static_cast<std::size_t>(t)] = c;
  }
  return counts;
}

}  // namespace oklab::detail
