#include "aapdhg/lp_model.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "aapdhg/errors.hpp"
#include "aapdhg/logging.hpp"

namespace aapdhg {
namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

double parse_number(const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw InputError("bad numeric field: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw InputError("bad numeric field: " + s);
  }
}

int column_of(RawLP& lp, const std::string& name) {
  auto it = lp.col_index.find(name);
  if (it != lp.col_index.end()) return it->second;
  const int idx = int(lp.col_names.size());
  lp.col_index.emplace(name, idx);
  lp.col_names.push_back(name);
  lp.obj_coeffs.push_back(0.0);
  lp.lower.push_back(0.0);
  lp.upper.push_back(kInf);
  lp.is_integer.push_back(false);
  return idx;
}

}  // namespace

RawLP parse_mps(std::istream& in) {
  RawLP lp;
  enum class Section { kNone, kRows, kColumns, kRhs, kBounds, kDone };
  Section section = Section::kNone;
  bool saw_rows = false, saw_columns = false, in_integer_block = false;
  bool objsense_pending = false;
  std::string line;

  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '*') continue;  // comment
    auto toks = tokenize(line);
    if (toks.empty()) continue;

    const bool header = !std::isspace(static_cast<unsigned char>(line[0]));
    if (header) {
      objsense_pending = false;
      const std::string& word = toks[0];
      if (word == "NAME") {
        if (toks.size() > 1) lp.name = toks[1];
      } else if (word == "OBJSENSE") {
        // sense appears either on this line or on the next indented one
        if (toks.size() > 1) {
          lp.maximize = (toks[1] == "MAX" || toks[1] == "MAXIMIZE");
        } else {
          objsense_pending = true;
        }
      } else if (word == "ROWS") {
        section = Section::kRows;
        saw_rows = true;
      } else if (word == "COLUMNS") {
        if (!saw_rows) throw InputError("COLUMNS before ROWS");
        section = Section::kColumns;
        saw_columns = true;
      } else if (word == "RHS") {
        if (!saw_columns) throw InputError("RHS before COLUMNS");
        section = Section::kRhs;
      } else if (word == "RANGES") {
        throw UnsupportedError("MPS RANGES section is not supported");
      } else if (word == "BOUNDS") {
        if (!saw_columns) throw InputError("BOUNDS before COLUMNS");
        section = Section::kBounds;
      } else if (word == "ENDATA") {
        section = Section::kDone;
        break;
      } else {
        throw InputError("unknown MPS section: " + word);
      }
      continue;
    }

    if (objsense_pending) {
      lp.maximize = (toks[0] == "MAX" || toks[0] == "MAXIMIZE");
      objsense_pending = false;
      continue;
    }

    switch (section) {
      case Section::kRows: {
        if (toks.size() != 2) throw InputError("bad ROWS record: " + line);
        const char sense = char(std::toupper(static_cast<unsigned char>(toks[0][0])));
        const std::string& name = toks[1];
        if (sense == 'N') {
          if (lp.objective_name.empty()) {
            lp.objective_name = name;
          } else {
            log_warn("extra N row dropped: " + name);
          }
        } else if (sense == 'E' || sense == 'G' || sense == 'L') {
          if (lp.row_index.count(name)) throw InputError("duplicate row: " + name);
          lp.row_index.emplace(name, int(lp.row_names.size()));
          lp.row_names.push_back(name);
          lp.row_sense.push_back(sense);
          lp.rhs.push_back(0.0);
        } else {
          throw InputError("bad row sense in: " + line);
        }
        break;
      }
      case Section::kColumns: {
        if (toks.size() >= 3 && toks[1] == "'MARKER'") {
          if (toks[2] == "'INTORG'") in_integer_block = true;
          else if (toks[2] == "'INTEND'") in_integer_block = false;
          else throw InputError("bad marker record: " + line);
          break;
        }
        if (toks.size() != 3 && toks.size() != 5)
          throw InputError("bad COLUMNS record: " + line);
        const int col = column_of(lp, toks[0]);
        if (in_integer_block && !lp.is_integer[std::size_t(col)]) {
          lp.is_integer[std::size_t(col)] = true;
          log_warn("integrality of column " + toks[0] + " relaxed");
        }
        for (std::size_t f = 1; f + 1 < toks.size(); f += 2) {
          const std::string& row = toks[f];
          const double val = parse_number(toks[f + 1]);
          if (row == lp.objective_name) {
            lp.obj_coeffs[std::size_t(col)] += val;
          } else {
            auto it = lp.row_index.find(row);
            if (it == lp.row_index.end())
              throw InputError("unknown row in COLUMNS: " + row);
            lp.entries.push_back({it->second, col, val});
          }
        }
        break;
      }
      case Section::kRhs: {
        if (toks.size() != 3 && toks.size() != 5)
          throw InputError("bad RHS record: " + line);
        for (std::size_t f = 1; f + 1 < toks.size(); f += 2) {
          const std::string& row = toks[f];
          const double val = parse_number(toks[f + 1]);
          if (row == lp.objective_name) {
            log_warn("RHS entry for objective row ignored");
            continue;
          }
          auto it = lp.row_index.find(row);
          if (it == lp.row_index.end())
            throw InputError("unknown row in RHS: " + row);
          lp.rhs[std::size_t(it->second)] = val;
        }
        break;
      }
      case Section::kBounds: {
        if (toks.size() != 3 && toks.size() != 4)
          throw InputError("bad BOUNDS record: " + line);
        const std::string code = toks[0];
        auto it = lp.col_index.find(toks[2]);
        if (it == lp.col_index.end())
          throw InputError("unknown column in BOUNDS: " + toks[2]);
        const std::size_t col = std::size_t(it->second);
        const bool needs_value =
            code == "UP" || code == "LO" || code == "FX" || code == "UI" || code == "LI";
        if (needs_value && toks.size() != 4)
          throw InputError("bound code " + code + " requires a value");
        const double val = needs_value ? parse_number(toks[3]) : 0.0;
        if (code == "UP") {
          lp.upper[col] = val;
        } else if (code == "LO") {
          lp.lower[col] = val;
        } else if (code == "FX") {
          lp.lower[col] = val;
          lp.upper[col] = val;
        } else if (code == "FR") {
          lp.lower[col] = -kInf;
          lp.upper[col] = kInf;
        } else if (code == "MI") {
          lp.lower[col] = -kInf;
        } else if (code == "PL") {
          lp.upper[col] = kInf;
        } else if (code == "BV") {
          lp.lower[col] = 0.0;
          lp.upper[col] = 1.0;
          log_warn("binary bound on " + toks[2] + " relaxed to [0,1]");
        } else if (code == "UI") {
          lp.upper[col] = val;
          log_warn("integer upper bound on " + toks[2] + " relaxed");
        } else if (code == "LI") {
          lp.lower[col] = val;
          log_warn("integer lower bound on " + toks[2] + " relaxed");
        } else {
          throw InputError("unknown bound code: " + code);
        }
        break;
      }
      case Section::kNone:
        throw InputError("data record before any section header: " + line);
      case Section::kDone:
        break;
    }
  }

  if (!saw_rows || !saw_columns) throw InputError("MPS missing ROWS or COLUMNS");
  if (lp.objective_name.empty()) throw InputError("MPS has no N (objective) row");
  return lp;
}

RawLP parse_mps_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file: " + path);
  return parse_mps(in);
}

ProblemData to_standard_form(const RawLP& raw) {
  ProblemData p;
  p.name = raw.name;
  p.maximize = raw.maximize;
  p.col_names = raw.col_names;
  const int n = int(raw.col_names.size());

  p.c = raw.obj_coeffs;
  if (raw.maximize)
    for (double& v : p.c) v = -v;

  p.l = raw.lower;
  p.u = raw.upper;
  for (int i = 0; i < n; ++i) {
    if (p.l[std::size_t(i)] > p.u[std::size_t(i)])
      throw InputError("inconsistent bounds on column " + raw.col_names[std::size_t(i)]);
  }

  // E rows become (A, b); G rows copy into (G, h); L rows are negated into (G, h).
  std::vector<int> target(raw.row_names.size());
  int m1 = 0, m2 = 0;
  for (std::size_t r = 0; r < raw.row_names.size(); ++r) {
    if (raw.row_sense[r] == 'E') {
      target[r] = m2++;
      p.row_names_a.push_back(raw.row_names[r]);
    } else {
      target[r] = m1++;
      p.row_names_g.push_back(raw.row_names[r]);
    }
  }

  std::vector<Triplet> g_entries, a_entries;
  for (const Triplet& t : raw.entries) {
    const char sense = raw.row_sense[std::size_t(t.row)];
    if (sense == 'E') {
      a_entries.push_back({target[std::size_t(t.row)], t.col, t.val});
    } else if (sense == 'G') {
      g_entries.push_back({target[std::size_t(t.row)], t.col, t.val});
    } else {
      g_entries.push_back({target[std::size_t(t.row)], t.col, -t.val});
    }
  }
  p.g = SparseMatrix::from_triplets(m1, n, std::move(g_entries));
  p.a = SparseMatrix::from_triplets(m2, n, std::move(a_entries));

  p.h.assign(std::size_t(m1), 0.0);
  p.b.assign(std::size_t(m2), 0.0);
  for (std::size_t r = 0; r < raw.row_names.size(); ++r) {
    const char sense = raw.row_sense[r];
    const double rhs = raw.rhs[r];
    if (sense == 'E') p.b[std::size_t(target[r])] = rhs;
    else if (sense == 'G') p.h[std::size_t(target[r])] = rhs;
    else p.h[std::size_t(target[r])] = -rhs;
  }

  p.k = vstack(p.g, p.a);
  p.q = p.h;
  p.q.insert(p.q.end(), p.b.begin(), p.b.end());
  return p;
}

LambdaSpec build_lambda_set(const Vec& l, const Vec& u) {
  if (l.size() != u.size()) throw DimensionError("build_lambda_set: size mismatch");
  LambdaSpec spec(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i] > u[i]) throw InputError("build_lambda_set: l > u");
    const bool lo = std::isfinite(l[i]);
    const bool hi = std::isfinite(u[i]);
    if (!lo && !hi) spec[i] = LambdaTag::kZero;
    else if (!lo) spec[i] = LambdaTag::kNonpos;
    else if (!hi) spec[i] = LambdaTag::kNonneg;
    else spec[i] = LambdaTag::kFree;
  }
  return spec;
}

std::string emit_mps(const ProblemData& p) {
  std::ostringstream out;
  out.precision(17);
  out << "NAME " << (p.name.empty() ? "LP" : p.name) << "\n";
  if (p.maximize) out << "OBJSENSE\n MAX\n";
  out << "ROWS\n N OBJ\n";
  for (const std::string& r : p.row_names_g) out << " G " << r << "\n";
  for (const std::string& r : p.row_names_a) out << " E " << r << "\n";

  out << "COLUMNS\n";
  // column-major walk over G and A; sign of c restored for maximize
  for (int col = 0; col < p.n(); ++col) {
    const std::string& cn = p.col_names[std::size_t(col)];
    const double cv = p.maximize ? -p.c[std::size_t(col)] : p.c[std::size_t(col)];
    if (cv != 0.0) out << " " << cn << " OBJ " << cv << "\n";
    for (int r = 0; r < p.g.nrows; ++r) {
      for (int k = p.g.row_ptr[r]; k < p.g.row_ptr[r + 1]; ++k) {
        if (p.g.col_idx[k] == col)
          out << " " << cn << " " << p.row_names_g[std::size_t(r)] << " "
              << p.g.vals[k] << "\n";
      }
    }
    for (int r = 0; r < p.a.nrows; ++r) {
      for (int k = p.a.row_ptr[r]; k < p.a.row_ptr[r + 1]; ++k) {
        if (p.a.col_idx[k] == col)
          out << " " << cn << " " << p.row_names_a[std::size_t(r)] << " "
              << p.a.vals[k] << "\n";
      }
    }
  }

  out << "RHS\n";
  for (int r = 0; r < p.m1(); ++r)
    if (p.h[std::size_t(r)] != 0.0)
      out << " RHS " << p.row_names_g[std::size_t(r)] << " " << p.h[std::size_t(r)] << "\n";
  for (int r = 0; r < p.m2(); ++r)
    if (p.b[std::size_t(r)] != 0.0)
      out << " RHS " << p.row_names_a[std::size_t(r)] << " " << p.b[std::size_t(r)] << "\n";

  out << "BOUNDS\n";
  for (int i = 0; i < p.n(); ++i) {
    const std::string& cn = p.col_names[std::size_t(i)];
    const double lo = p.l[std::size_t(i)], hi = p.u[std::size_t(i)];
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
      out << " FR BND " << cn << "\n";
    } else {
      if (!std::isfinite(lo)) out << " MI BND " << cn << "\n";
      else if (lo != 0.0) out << " LO BND " << cn << " " << lo << "\n";
      if (std::isfinite(hi)) out << " UP BND " << cn << " " << hi << "\n";
    }
  }
  out << "ENDATA\n";
  return out.str();
}

}  // namespace aapdhg
