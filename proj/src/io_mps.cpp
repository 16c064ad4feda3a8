#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>

#include "facet/io.hpp"

namespace facet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct VarDef {
  std::string name;
  double lo = 0.0;
  double up = kInf;
  bool free = false;
  double objective = 0.0;
  std::map<int, double> entries;  // constraint row -> coefficient
};

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_number(const std::string& tok, int line) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || tok.empty()) {
    throw ParseError("expected a number, got '" + tok + "'", line);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite value", line);
  return v;
}

}  // namespace

StandardFormLP parse_mps(const std::string& text) {
  enum class Section { None, Name, ObjSense, Rows, Columns, Rhs, Bounds, Done };
  Section section = Section::None;

  std::vector<char> row_types;          // E/G/L per constraint, in order
  std::vector<std::string> row_names;
  std::map<std::string, int> row_index;
  std::string objective_row;

  std::vector<VarDef> vars;
  std::map<std::string, int> var_index;
  std::vector<double> rhs;

  auto var_of = [&](const std::string& name) -> VarDef& {
    auto it = var_index.find(name);
    if (it == var_index.end()) {
      var_index.emplace(name, static_cast<int>(vars.size()));
      vars.push_back(VarDef{name, 0.0, kInf, false, 0.0, {}});
      return vars.back();
    }
    return vars[it->second];
  };

  std::istringstream stream(text);
  std::string line;
  int lineno = 0;
  bool saw_endata = false;

  while (std::getline(stream, line)) {
    ++lineno;
    if (line.empty() || line[0] == '*') continue;
    const std::vector<std::string> tok = tokenize(line);
    if (tok.empty()) continue;

    const bool is_header = !std::isspace(static_cast<unsigned char>(line[0]));
    if (is_header) {
      const std::string& head = tok[0];
      if (head == "NAME") {
        section = Section::Name;
      } else if (head == "OBJSENSE") {
        section = Section::ObjSense;
        if (tok.size() > 1 && (tok[1] == "MAX" || tok[1] == "MAXIMIZE")) {
          throw ParseError("maximization not supported", lineno);
        }
      } else if (head == "ROWS") {
        section = Section::Rows;
      } else if (head == "COLUMNS") {
        section = Section::Columns;
      } else if (head == "RHS") {
        section = Section::Rhs;
        rhs.assign(row_types.size(), 0.0);
      } else if (head == "BOUNDS") {
        section = Section::Bounds;
      } else if (head == "ENDATA") {
        saw_endata = true;
        section = Section::Done;
        break;
      } else if (head == "RANGES") {
        throw UnsupportedSection("RANGES section is not supported");
      } else {
        throw UnsupportedSection("unsupported section '" + head + "'");
      }
      continue;
    }

    switch (section) {
      case Section::None:
        throw ParseError("data before any section header", lineno);
      case Section::Name:
      case Section::Done:
        break;
      case Section::ObjSense: {
        if (tok[0] == "MAX" || tok[0] == "MAXIMIZE") {
          throw ParseError("maximization not supported", lineno);
        }
        if (tok[0] != "MIN" && tok[0] != "MINIMIZE") {
          throw ParseError("unknown objective sense '" + tok[0] + "'", lineno);
        }
        break;
      }
      case Section::Rows: {
        if (tok.size() != 2) throw ParseError("ROWS lines need type and name", lineno);
        const std::string& type = tok[0];
        const std::string& name = tok[1];
        if (type == "N") {
          if (!objective_row.empty()) {
            throw ParseError("multiple objective rows", lineno);
          }
          objective_row = name;
        } else if (type == "E" || type == "G" || type == "L") {
          if (row_index.count(name)) throw ParseError("duplicate row '" + name + "'", lineno);
          row_index.emplace(name, static_cast<int>(row_types.size()));
          row_types.push_back(type[0]);
          row_names.push_back(name);
        } else {
          throw ParseError("unknown row type '" + type + "'", lineno);
        }
        break;
      }
      case Section::Columns: {
        if (tok.size() < 3 || tok.size() % 2 == 0) {
          throw ParseError("COLUMNS lines need column then row/value pairs", lineno);
        }
        VarDef& var = var_of(tok[0]);
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          const std::string& row = tok[k];
          const double value = parse_number(tok[k + 1], lineno);
          if (row == objective_row) {
            var.objective += value;
          } else {
            auto it = row_index.find(row);
            if (it == row_index.end()) {
              throw ParseError("unknown row '" + row + "'", lineno);
            }
            var.entries[it->second] += value;
          }
        }
        break;
      }
      case Section::Rhs: {
        if (tok.size() < 3 || tok.size() % 2 == 0) {
          throw ParseError("RHS lines need set name then row/value pairs", lineno);
        }
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          const std::string& row = tok[k];
          const double value = parse_number(tok[k + 1], lineno);
          if (row == objective_row) continue;  // objective constants dropped
          auto it = row_index.find(row);
          if (it == row_index.end()) {
            throw ParseError("unknown row '" + row + "'", lineno);
          }
          rhs[it->second] = value;
        }
        break;
      }
      case Section::Bounds: {
        if (tok.size() < 3) throw ParseError("BOUNDS lines need type, set, column", lineno);
        const std::string& type = tok[0];
        auto it = var_index.find(tok[2]);
        if (it == var_index.end()) {
          throw ParseError("bound on unknown column '" + tok[2] + "'", lineno);
        }
        VarDef& var = vars[it->second];
        if (type == "LO") {
          if (tok.size() != 4) throw ParseError("LO bound needs a value", lineno);
          var.lo = parse_number(tok[3], lineno);
        } else if (type == "UP") {
          if (tok.size() != 4) throw ParseError("UP bound needs a value", lineno);
          var.up = parse_number(tok[3], lineno);
        } else if (type == "FR") {
          var.free = true;
        } else {
          throw UnsupportedBound("bound type '" + type + "' is not supported");
        }
        break;
      }
    }
  }

  if (!saw_endata) throw ParseError("missing ENDATA", lineno);
  if (vars.empty()) throw ParseError("no columns defined", lineno);
  if (row_types.empty()) throw ParseError("no constraint rows defined", lineno);
  if (rhs.size() != row_types.size()) rhs.assign(row_types.size(), 0.0);

  for (const VarDef& v : vars) {
    if (v.free && (v.lo != 0.0 || v.up != kInf)) {
      throw UnsupportedBound("column '" + v.name + "' is both free and bounded");
    }
    if (!v.free && v.up < v.lo) {
      throw UnsupportedBound("column '" + v.name + "' has empty bound interval");
    }
    if (!v.free && v.up < 0.0 && v.lo == 0.0) {
      throw UnsupportedBound("column '" + v.name +
                             "' has UP below the default lower bound");
    }
  }

  // Assemble the standard form: shifted/split variables first (negative
  // parts appended after the originals), then slack columns, in order
  // inequality rows then bound rows.
  const int m0 = static_cast<int>(row_types.size());
  const int nv = static_cast<int>(vars.size());

  std::vector<int> bound_row_of(nv, -1);
  int extra_rows = 0;
  for (int j = 0; j < nv; ++j) {
    if (!vars[j].free && vars[j].up < kInf) bound_row_of[j] = m0 + extra_rows++;
  }
  const int m = m0 + extra_rows;

  std::vector<int> neg_col_of(nv, -1);
  int neg_cols = 0;
  for (int j = 0; j < nv; ++j) {
    if (vars[j].free) neg_col_of[j] = nv + neg_cols++;
  }
  int slack_cols = 0;
  for (char t : row_types) {
    if (t != 'E') ++slack_cols;
  }
  slack_cols += extra_rows;
  const int n = nv + neg_cols + slack_cols;

  StandardFormLP lp;
  lp.A = Matrix::Zero(m, n);
  lp.b = Vector::Zero(m);
  lp.c = Vector::Zero(n);
  lp.names.resize(n);

  for (int i = 0; i < m0; ++i) lp.b(i) = rhs[i];
  for (int j = 0; j < nv; ++j) {
    const VarDef& v = vars[j];
    lp.names[j] = v.name;
    lp.c(j) = v.objective;
    for (const auto& [row, value] : v.entries) lp.A(row, j) = value;
    if (v.free) {
      const int jn = neg_col_of[j];
      lp.names[jn] = v.name + "_neg";
      lp.c(jn) = -v.objective;
      for (const auto& [row, value] : v.entries) lp.A(row, jn) = -value;
    } else if (v.lo != 0.0) {
      for (const auto& [row, value] : v.entries) lp.b(row) -= value * v.lo;
    }
    if (bound_row_of[j] >= 0) {
      lp.A(bound_row_of[j], j) = 1.0;
      lp.b(bound_row_of[j]) = v.up - v.lo;
    }
  }

  int next_slack = nv + neg_cols;
  int slack_id = 1;
  for (int i = 0; i < m0; ++i) {
    if (row_types[i] == 'L') {
      lp.A(i, next_slack) = 1.0;
    } else if (row_types[i] == 'G') {
      lp.A(i, next_slack) = -1.0;
    } else {
      continue;
    }
    lp.names[next_slack] = "_s" + std::to_string(slack_id++);
    ++next_slack;
  }
  for (int j = 0; j < nv; ++j) {
    if (bound_row_of[j] >= 0) {
      lp.A(bound_row_of[j], next_slack) = 1.0;
      lp.names[next_slack] = "_s" + std::to_string(slack_id++);
      ++next_slack;
    }
  }
  return lp;
}

}  // namespace facet
