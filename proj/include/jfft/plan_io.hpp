#pragma once

// Plan cache files: a versioned, endianness-free text format holding the
// header, every level's label table and every factor's block list.  Entries
// are written with 17 significant digits, so a reloaded plan applies
// transforms bit-identically to the freshly built one.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "jfft/build.hpp"
#include "jfft/factor.hpp"

namespace jfft {

inline constexpr const char* kPlanMagic = "jfft-plan";
inline constexpr int kPlanFormatVersion = 1;

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_plan(const TransformPlan& plan, std::ostream& os) {
  os << kPlanMagic << " v" << kPlanFormatVersion << "\n";
  os << "n " << plan.n << " k " << plan.k << " dim " << plan.dim << "\n";
  for (int lev = 0; lev <= plan.n; ++lev) {
    const auto& labels = plan.levels[static_cast<size_t>(lev)];
    os << "level " << lev << " size " << labels.size() << "\n";
    for (const auto& lab : labels) {
      os << serialize_tableau(lab.tableau, plan.n) << ' '
         << (lab.suffix.empty() ? std::string("-") : lab.suffix) << "\n";
    }
  }
  os << "factors " << plan.factors.size() << "\n";
  for (const auto& f : plan.factors) {
    os << "factor " << f.level << " blocks " << f.blocks.size() << "\n";
    for (const auto& b : f.blocks) {
      os << b.nrows << ' ' << b.ncols;
      for (int r = 0; r < b.nrows; ++r) os << ' ' << b.rows[static_cast<size_t>(r)];
      for (int c = 0; c < b.ncols; ++c) os << ' ' << b.cols[static_cast<size_t>(c)];
      for (int r = 0; r < b.nrows; ++r)
        for (int c = 0; c < b.ncols; ++c) os << ' ' << format_double(b.at(r, c));
      os << "\n";
    }
  }
  os << "end\n";
}

inline void save_plan(const TransformPlan& plan, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path + " for writing");
  write_plan(plan, os);
  os.flush();
  if (!os) throw IoError("write failure on " + path);
}

namespace detail {

struct PlanReader {
  std::istream& is;
  std::string source;
  int line_no = 0;
  std::string line;

  bool next_line() {
    while (std::getline(is, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw IoError(source + ":" + std::to_string(line_no) + ": " + msg);
  }

  std::vector<std::string> tokens() const {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
  }

  long expect_int(const std::string& tok) const {
    try {
      size_t pos = 0;
      long v = std::stol(tok, &pos);
      if (pos != tok.size()) fail("bad integer '" + tok + "'");
      return v;
    } catch (const IoError&) {
      throw;
    } catch (...) {
      fail("bad integer '" + tok + "'");
    }
  }

  double expect_double(const std::string& tok) const {
    const char* begin = tok.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + tok.size()) fail("bad number '" + tok + "'");
    return v;
  }
};

}  // namespace detail

/// Parse a plan and rebuild the derived tables.  Structural problems (bad
/// header, wrong table sizes, non-canonical labels, index gaps) are reported
/// with the offending line; numeric content is left to verification.
inline TransformPlan read_plan(std::istream& is, const std::string& source = "<plan>") {
  detail::PlanReader rd{is, source, 0, {}};
  if (!rd.next_line()) rd.fail("empty plan file");
  {
    auto t = rd.tokens();
    if (t.size() != 2 || t[0] != kPlanMagic) rd.fail("not a plan file (bad magic)");
    if (t[1] != "v" + std::to_string(kPlanFormatVersion))
      rd.fail("unsupported plan format version '" + t[1] + "'");
  }
  TransformPlan plan;
  if (!rd.next_line()) rd.fail("missing header line");
  {
    auto t = rd.tokens();
    if (t.size() != 6 || t[0] != "n" || t[2] != "k" || t[4] != "dim") rd.fail("bad header line");
    plan.n = static_cast<int>(rd.expect_int(t[1]));
    plan.k = static_cast<int>(rd.expect_int(t[3]));
    plan.dim = static_cast<int>(rd.expect_int(t[5]));
    if (plan.n < 0 || plan.k < 0 || plan.k > plan.n) rd.fail("invalid n/k");
    if (plan.dim != binomial(plan.n, plan.k)) rd.fail("dim does not equal C(n,k)");
  }

  for (int lev = 0; lev <= plan.n; ++lev) {
    if (!rd.next_line()) rd.fail("missing level " + std::to_string(lev));
    auto t = rd.tokens();
    if (t.size() != 4 || t[0] != "level" || t[2] != "size") rd.fail("bad level line");
    if (rd.expect_int(t[1]) != lev) rd.fail("levels out of order");
    long size = rd.expect_int(t[3]);
    if (size != plan.dim) rd.fail("level size must equal dim");
    std::vector<BasisLabel> labels;
    labels.reserve(static_cast<size_t>(size));
    for (long j = 0; j < size; ++j) {
      if (!rd.next_line()) rd.fail("truncated label table");
      auto lt = rd.tokens();
      if (lt.size() != 2) rd.fail("bad label line");
      BasisLabel lab;
      try {
        lab.tableau = parse_tableau(lt[0], plan.n);
      } catch (const std::invalid_argument& e) {
        rd.fail(e.what());
      }
      lab.suffix = (lt[1] == "-") ? std::string() : lt[1];
      lab.level = lev;
      if (!label_is_feasible(lab, plan.n, plan.k)) rd.fail("label is not feasible at this level");
      labels.push_back(std::move(lab));
    }
    plan.levels.push_back(std::move(labels));
  }

  // The canonical order is part of the format; a reordered table would break
  // every index in the factors.
  for (int lev = 0; lev <= plan.n; ++lev) {
    auto expected = enumerate_labels(plan.n, plan.k, lev);
    if (expected != plan.levels[static_cast<size_t>(lev)])
      rd.fail("level " + std::to_string(lev) + " label table is not in canonical order");
  }

  if (!rd.next_line()) rd.fail("missing factors line");
  {
    auto t = rd.tokens();
    if (t.size() != 2 || t[0] != "factors") rd.fail("bad factors line");
    if (rd.expect_int(t[1]) != std::max(0, plan.n - 1)) rd.fail("wrong factor count");
  }
  for (int lev = 1; lev <= plan.n - 1; ++lev) {
    if (!rd.next_line()) rd.fail("missing factor " + std::to_string(lev));
    auto t = rd.tokens();
    if (t.size() != 4 || t[0] != "factor" || t[2] != "blocks") rd.fail("bad factor line");
    if (rd.expect_int(t[1]) != lev) rd.fail("factors out of order");
    long nblocks = rd.expect_int(t[3]);
    SparseOrthFactor f;
    f.level = lev;
    f.dim = plan.dim;
    std::vector<char> row_seen(static_cast<size_t>(plan.dim), 0);
    std::vector<char> col_seen(static_cast<size_t>(plan.dim), 0);
    for (long bi = 0; bi < nblocks; ++bi) {
      if (!rd.next_line()) rd.fail("truncated block list");
      auto bt = rd.tokens();
      if (bt.size() < 2) rd.fail("bad block line");
      FactorBlock b;
      b.nrows = static_cast<int>(rd.expect_int(bt[0]));
      b.ncols = static_cast<int>(rd.expect_int(bt[1]));
      if (b.nrows < 1 || b.nrows > 2 || b.ncols < 1 || b.ncols > 2) rd.fail("block size out of range");
      size_t want = 2 + static_cast<size_t>(b.nrows) + static_cast<size_t>(b.ncols) +
                    static_cast<size_t>(b.nrows) * static_cast<size_t>(b.ncols);
      if (bt.size() != want) rd.fail("bad block line (wrong token count)");
      size_t pos = 2;
      for (int r = 0; r < b.nrows; ++r) {
        long v = rd.expect_int(bt[pos++]);
        if (v < 0 || v >= plan.dim) rd.fail("row index out of range");
        if (row_seen[static_cast<size_t>(v)]++) rd.fail("row index appears twice in factor");
        b.rows[static_cast<size_t>(r)] = static_cast<int>(v);
      }
      for (int c = 0; c < b.ncols; ++c) {
        long v = rd.expect_int(bt[pos++]);
        if (v < 0 || v >= plan.dim) rd.fail("col index out of range");
        if (col_seen[static_cast<size_t>(v)]++) rd.fail("col index appears twice in factor");
        b.cols[static_cast<size_t>(c)] = static_cast<int>(v);
      }
      for (int r = 0; r < b.nrows; ++r)
        for (int c = 0; c < b.ncols; ++c)
          b.entries[static_cast<size_t>(r * b.ncols + c)] = rd.expect_double(bt[pos++]);
      f.blocks.push_back(b);
    }
    for (int j = 0; j < plan.dim; ++j)
      if (!row_seen[static_cast<size_t>(j)] || !col_seen[static_cast<size_t>(j)])
        rd.fail("factor " + std::to_string(lev) + " does not cover index " + std::to_string(j));
    plan.factors.push_back(std::move(f));
  }
  if (!rd.next_line() || rd.line != "end") rd.fail("missing end marker");

  if (plan.n >= 1) {
    auto word_idx = label_index(plan.levels[0], plan.n);
    plan.b1_to_word.resize(plan.levels[1].size());
    for (size_t j = 0; j < plan.levels[1].size(); ++j) {
      const auto& lab = plan.levels[1][j];
      char first = (plan.k - count_ones(lab.suffix) == 1) ? '1' : '2';
      BasisLabel word{StandardTableau{}, first + lab.suffix, 0};
      plan.b1_to_word[j] = word_idx.at(serialize_label(word, plan.n));
    }
  }
  plan.gt_shape_a.reserve(plan.levels.back().size());
  for (const auto& lab : plan.levels.back()) plan.gt_shape_a.push_back(lab.tableau.shape_row2());
  return plan;
}

inline TransformPlan load_plan(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path);
  return read_plan(is, path);
}

}  // namespace jfft
