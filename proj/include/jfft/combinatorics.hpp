#pragma once

// Label combinatorics for functions on k-subsets of {1..n}.
//
// A k-subset of {1..n} is encoded as a word of length n over the alphabet
// {1,2}: position i carries '1' exactly when i belongs to the subset.
// The transform machinery works with intermediate labels: a pair made of a
// two-row standard Young tableau of size i and a suffix word c_{i+1}..c_n.
// At level 0 the tableau is empty and the suffix is the whole word (delta
// basis); at level n the suffix is empty and labels are standard tableaux.
//
// Canonical ordering used everywhere (tables, matrices, files):
//   primary key   = suffix, lexicographic with '1' < '2'
//   secondary key = tableau content vector, lexicographic

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jfft {

using Word = std::string;

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline int count_ones(std::string_view s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '1'));
}

inline bool word_is_valid(std::string_view w, int n, int k) {
  if (static_cast<int>(w.size()) != n) return false;
  for (char c : w)
    if (c != '1' && c != '2') return false;
  return count_ones(w) == k;
}

/// All C(n,k) words in lexicographic order ('1' < '2'); the delta basis order.
inline std::vector<Word> enumerate_words(int n, int k) {
  if (n < 0 || k < 0 || k > n)
    throw std::invalid_argument("enumerate_words: need 0 <= k <= n");
  std::vector<Word> out;
  out.reserve(static_cast<size_t>(binomial(n, k)));
  Word w;
  w.reserve(static_cast<size_t>(n));
  auto rec = [&](auto&& self, int ones_left) -> void {
    int pos = static_cast<int>(w.size());
    if (pos == n) {
      out.push_back(w);
      return;
    }
    int remaining = n - pos;
    if (ones_left > 0) {
      w.push_back('1');
      self(self, ones_left - 1);
      w.pop_back();
    }
    if (remaining - 1 >= ones_left) {
      w.push_back('2');
      self(self, ones_left);
      w.pop_back();
    }
  };
  rec(rec, k);
  return out;
}

// ---------------------------------------------------------------------------
// Standard Young tableaux with at most two rows.
// ---------------------------------------------------------------------------

struct StandardTableau {
  std::vector<int> row1;
  std::vector<int> row2;

  int size() const { return static_cast<int>(row1.size() + row2.size()); }
  int shape_row1() const { return static_cast<int>(row1.size()); }
  int shape_row2() const { return static_cast<int>(row2.size()); }

  bool operator==(const StandardTableau& o) const = default;

  // Entries 1..size, rows strictly increasing, row2[j] > row1[j], row1 >= row2.
  bool valid() const {
    int sz = size();
    std::vector<char> seen(static_cast<size_t>(sz) + 1, 0);
    if (row2.size() > row1.size()) return false;
    for (auto& row : {row1, row2}) {
      for (size_t j = 0; j < row.size(); ++j) {
        if (row[j] < 1 || row[j] > sz || seen[static_cast<size_t>(row[j])]) return false;
        seen[static_cast<size_t>(row[j])] = 1;
        if (j > 0 && row[j] <= row[j - 1]) return false;
      }
    }
    for (size_t j = 0; j < row2.size(); ++j)
      if (row2[j] <= row1[j]) return false;
    return true;
  }

  /// Content vector: entry j holds column - row (1-indexed) of the box
  /// labeled j+1.  Row-1 box at 0-based column c has content c, row-2 has c-1.
  std::vector<int> contents() const {
    std::vector<int> c(static_cast<size_t>(size()), 0);
    for (size_t j = 0; j < row1.size(); ++j) c[static_cast<size_t>(row1[j]) - 1] = static_cast<int>(j);
    for (size_t j = 0; j < row2.size(); ++j) c[static_cast<size_t>(row2[j]) - 1] = static_cast<int>(j) - 1;
    return c;
  }

  /// Content of the box holding the largest entry (always at the end of its row).
  int last_content() const {
    if (size() == 0) throw std::invalid_argument("last_content: empty tableau");
    if (!row2.empty() && row2.back() == size()) return static_cast<int>(row2.size()) - 2;
    return static_cast<int>(row1.size()) - 1;
  }

  /// Tableau with the largest entry removed.
  StandardTableau restricted() const {
    StandardTableau t = *this;
    if (size() == 0) throw std::invalid_argument("restricted: empty tableau");
    if (!t.row2.empty() && t.row2.back() == size())
      t.row2.pop_back();
    else
      t.row1.pop_back();
    return t;
  }

  /// Tableau with entry size+1 appended to the given row (1 or 2).
  StandardTableau grown(int row) const {
    StandardTableau t = *this;
    int next = size() + 1;
    if (row == 1) {
      t.row1.push_back(next);
    } else if (row == 2) {
      if (row2.size() + 1 > row1.size())
        throw std::invalid_argument("grown: row 2 would exceed row 1");
      t.row2.push_back(next);
    } else {
      throw std::invalid_argument("grown: row must be 1 or 2");
    }
    return t;
  }
};

/// Lexicographic order on content vectors; a bijection on tableaux of one size.
inline bool content_less(const StandardTableau& a, const StandardTableau& b) {
  return a.contents() < b.contents();
}

// Serialization: entries of row1, '/', entries of row2.  Single-digit entries
// are concatenated ("134/25"); for n >= 10 entries are '.'-separated
// ("1.3.10/2.5").  The empty tableau is "/".
inline std::string serialize_tableau(const StandardTableau& t, int n) {
  std::string s;
  auto emit = [&](const std::vector<int>& row) {
    for (size_t j = 0; j < row.size(); ++j) {
      if (n >= 10 && j > 0) s += '.';
      s += std::to_string(row[j]);
    }
  };
  emit(t.row1);
  s += '/';
  emit(t.row2);
  return s;
}

inline StandardTableau parse_tableau(std::string_view s, int n) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos)
    throw std::invalid_argument("parse_tableau: missing '/' in \"" + std::string(s) + "\"");
  auto parse_row = [&](std::string_view part) {
    std::vector<int> row;
    if (part.empty()) return row;
    if (n < 10) {
      for (char c : part) {
        if (c < '1' || c > '9')
          throw std::invalid_argument("parse_tableau: bad entry in \"" + std::string(s) + "\"");
        row.push_back(c - '0');
      }
    } else {
      size_t pos = 0;
      while (pos < part.size()) {
        size_t dot = part.find('.', pos);
        std::string_view tok = part.substr(pos, dot == std::string_view::npos ? dot : dot - pos);
        if (tok.empty()) throw std::invalid_argument("parse_tableau: empty entry in \"" + std::string(s) + "\"");
        int v = 0;
        for (char c : tok) {
          if (c < '0' || c > '9')
            throw std::invalid_argument("parse_tableau: bad entry in \"" + std::string(s) + "\"");
          v = v * 10 + (c - '0');
        }
        row.push_back(v);
        pos = (dot == std::string_view::npos) ? part.size() : dot + 1;
      }
    }
    return row;
  };
  StandardTableau t;
  t.row1 = parse_row(s.substr(0, slash));
  t.row2 = parse_row(s.substr(slash + 1));
  if (!t.valid())
    throw std::invalid_argument("parse_tableau: not a standard tableau: \"" + std::string(s) + "\"");
  return t;
}

/// All standard tableaux of two-row shape (p, q), p >= q >= 0.
inline std::vector<StandardTableau> standard_tableaux_of_shape(int p, int q) {
  if (p < q || q < 0) throw std::invalid_argument("standard_tableaux_of_shape: need p >= q >= 0");
  std::vector<StandardTableau> out;
  StandardTableau cur;
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == p + q) {
      out.push_back(cur);
      return;
    }
    int next = cur.size() + 1;
    if (cur.shape_row1() < p) {
      cur.row1.push_back(next);
      self(self);
      cur.row1.pop_back();
    }
    if (cur.shape_row2() < q && cur.shape_row2() < cur.shape_row1()) {
      cur.row2.push_back(next);
      self(self);
      cur.row2.pop_back();
    }
  };
  rec(rec);
  return out;
}

/// All standard tableaux with `boxes` boxes and shape (boxes-a, a) for
/// a = 0..amax, sorted by content vector.
inline std::vector<StandardTableau> standard_tableaux_up_to(int boxes, int amax) {
  std::vector<StandardTableau> out;
  for (int a = 0; a <= amax && boxes - a >= a; ++a) {
    auto part = standard_tableaux_of_shape(boxes - a, a);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end(), content_less);
  return out;
}

// ---------------------------------------------------------------------------
// Robinson-Schensted insertion over the alphabet {1,2}.
// ---------------------------------------------------------------------------

// The insertion tableau is determined by three counters: x '1's in row 1,
// y '2's in row 1, z '2's in row 2.  Only the recording tableau is kept in
// full; its shape is (x+y, z).
struct RsState {
  int ones_row1 = 0;
  int twos_row1 = 0;
  int twos_row2 = 0;
  StandardTableau recording;
};

/// One insertion step.  A '2' is appended to row 1; a '1' bumps the first '2'
/// of row 1 into row 2 if one exists, otherwise it is appended to row 1.
inline RsState rs_step(const RsState& state, char letter, int step_index) {
  if (letter != '1' && letter != '2') throw std::invalid_argument("rs_step: letter must be '1' or '2'");
  if (step_index != state.recording.size() + 1)
    throw std::invalid_argument("rs_step: step_index must be recording size + 1");
  RsState next = state;
  if (letter == '2') {
    next.twos_row1 += 1;
    next.recording = next.recording.grown(1);
  } else if (state.twos_row1 > 0) {
    next.ones_row1 += 1;
    next.twos_row1 -= 1;
    next.twos_row2 += 1;
    next.recording = next.recording.grown(2);
  } else {
    next.ones_row1 += 1;
    next.recording = next.recording.grown(1);
  }
  return next;
}

// ---------------------------------------------------------------------------
// Intermediate basis labels.
// ---------------------------------------------------------------------------

struct BasisLabel {
  StandardTableau tableau;  // size == level
  std::string suffix;       // letters c_{level+1} .. c_n
  int level = 0;

  bool operator==(const BasisLabel& o) const = default;
};

inline std::string serialize_label(const BasisLabel& lab, int n) {
  return serialize_tableau(lab.tableau, n) + "|" + lab.suffix;
}

/// A level-i label is feasible when, with r = k - ones(suffix), the tableau
/// shape (i-a, a) satisfies 0 <= r <= i and a <= min(r, i-r).
inline bool label_is_feasible(const BasisLabel& lab, int n, int k) {
  int i = lab.level;
  if (lab.tableau.size() != i) return false;
  if (static_cast<int>(lab.suffix.size()) != n - i) return false;
  int r = k - count_ones(lab.suffix);
  if (r < 0 || r > i) return false;
  int a = lab.tableau.shape_row2();
  return a <= std::min(r, i - r);
}

/// All C(n,k) labels of the level-i intermediate basis in canonical order.
inline std::vector<BasisLabel> enumerate_labels(int n, int k, int i) {
  if (n < 0 || k < 0 || k > n || i < 0 || i > n)
    throw std::invalid_argument("enumerate_labels: need 0 <= k <= n and 0 <= level <= n");
  std::vector<BasisLabel> out;
  out.reserve(static_cast<size_t>(binomial(n, k)));
  std::map<int, std::vector<StandardTableau>> tableaux_by_r;
  int m = n - i;
  std::string suffix;
  suffix.reserve(static_cast<size_t>(m));
  auto emit_suffix = [&]() {
    int r = k - count_ones(suffix);
    if (r < 0 || r > i) return;
    auto it = tableaux_by_r.find(r);
    if (it == tableaux_by_r.end())
      it = tableaux_by_r.emplace(r, standard_tableaux_up_to(i, std::min(r, i - r))).first;
    for (const auto& t : it->second) out.push_back(BasisLabel{t, suffix, i});
  };
  auto rec = [&](auto&& self, int ones_so_far) -> void {
    if (static_cast<int>(suffix.size()) == m) {
      emit_suffix();
      return;
    }
    // Prune suffixes whose ones count cannot land in [k-i, k].
    int left = m - static_cast<int>(suffix.size());
    for (char c : {'1', '2'}) {
      int ones = ones_so_far + (c == '1' ? 1 : 0);
      if (ones > k) continue;
      if (ones + (left - 1) < k - i) continue;
      suffix.push_back(c);
      self(self, ones);
      suffix.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Block keys.
//
// Two labels lie in the same invariant subspace, hence in the same block of
// a change-of-basis or Jucys-Murphy matrix, exactly when their keys agree.
// ---------------------------------------------------------------------------

using BlockKey = std::string;

/// Key of the decomposition with tableau cut at i-1 and suffix kept from
/// position i+1.  Valid for labels at level i-1 or i; groups <= 2 labels
/// per level.  These are the blocks of the factor mapping level i-1 to i.
inline BlockKey block_key_change(const BasisLabel& lab, int i, int n) {
  if (lab.level == i) {
    return serialize_tableau(lab.tableau.restricted(), n) + "|" + lab.suffix;
  }
  if (lab.level == i - 1) {
    if (lab.suffix.empty()) throw std::invalid_argument("block_key_change: level i-1 label has no suffix");
    return serialize_tableau(lab.tableau, n) + "|" + lab.suffix.substr(1);
  }
  throw std::invalid_argument("block_key_change: label level must be i-1 or i");
}

/// Key of the coarser decomposition with tableau cut at i-1 and suffix kept
/// from position i+2.  Valid for levels i-1, i, i+1; groups <= 4 labels per
/// level.  These are the blocks the Jucys-Murphy recurrence works on.
inline BlockKey block_key_j(const BasisLabel& lab, int i, int n) {
  if (lab.level == i - 1) {
    if (lab.suffix.size() < 2) throw std::invalid_argument("block_key_j: suffix too short");
    return serialize_tableau(lab.tableau, n) + "|" + lab.suffix.substr(2);
  }
  if (lab.level == i) {
    if (lab.suffix.empty()) throw std::invalid_argument("block_key_j: suffix too short");
    return serialize_tableau(lab.tableau.restricted(), n) + "|" + lab.suffix.substr(1);
  }
  if (lab.level == i + 1) {
    return serialize_tableau(lab.tableau.restricted().restricted(), n) + "|" + lab.suffix;
  }
  throw std::invalid_argument("block_key_j: label level must be in {i-1, i, i+1}");
}

}  // namespace jfft
