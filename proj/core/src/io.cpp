#include "hdx/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hdx/errors.hpp"

namespace hdx {

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

// Non-empty lines with comments stripped.
std::vector<Line> content_lines(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = raw.find_last_not_of(" \t\r");
    out.push_back({n, raw.substr(first, last - first + 1)});
  }
  return out;
}

[[noreturn]] void fail(const Line& l, const std::string& msg) {
  throw ValidationError("line " + std::to_string(l.number) + ": " + msg);
}

double parse_double(const Line& l, const std::string& tok) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) fail(l, "bad number '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(l, "bad number '" + tok + "'");
  }
}

long long parse_int(const Line& l, const std::string& tok) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(tok, &used);
    if (used != tok.size()) fail(l, "bad integer '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(l, "bad integer '" + tok + "'");
  }
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream ss(s);
  std::vector<std::string> out;
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

// Splits "lhs : rhs" at the last colon.
std::pair<std::string, std::string> split_colon(const Line& l) {
  const auto c = l.text.rfind(':');
  if (c == std::string::npos) fail(l, "expected '<element> : <value>'");
  return {l.text.substr(0, c), l.text.substr(c + 1)};
}

Face parse_face(const Line& l, const std::string& s) {
  std::vector<Vertex> vs;
  for (const auto& t : tokens(s)) {
    const long long v = parse_int(l, t);
    if (v < 0 || v > 0xffffffffLL) fail(l, "vertex id out of range: " + t);
    vs.push_back(static_cast<Vertex>(v));
  }
  try {
    return Face::from_unsorted(std::move(vs));
  } catch (const ValidationError& e) {
    fail(l, e.what());
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return in;
}

}  // namespace

WeightedComplex read_complex(std::istream& in) {
  const auto lines = content_lines(in);
  if (lines.empty()) throw ValidationError("empty complex file");
  const auto head = tokens(lines[0].text);
  if (head.size() != 2 || head[0] != "dim") fail(lines[0], "expected header 'dim <d>'");
  const long long d = parse_int(lines[0], head[1]);
  if (d < 0) fail(lines[0], "dimension must be non-negative");
  std::vector<Face> faces;
  std::vector<double> weights;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [lhs, rhs] = split_colon(lines[i]);
    Face f = parse_face(lines[i], lhs);
    if (f.dimension() != d) {
      throw DimensionMismatchError("line " + std::to_string(lines[i].number) + ": face " +
                                   f.to_string() + " has dimension " +
                                   std::to_string(f.dimension()) + ", expected " +
                                   std::to_string(d));
    }
    const auto wt = tokens(rhs);
    if (wt.size() != 1) fail(lines[i], "expected a single weight after ':'");
    const double w = parse_double(lines[i], wt[0]);
    if (!(w > 0.0)) fail(lines[i], "weight must be positive");
    faces.push_back(std::move(f));
    weights.push_back(w);
  }
  if (faces.empty()) throw ValidationError("complex file lists no faces");
  return WeightedComplex::from_top_faces(std::move(faces), std::move(weights));
}

WeightedComplex read_complex_file(const std::string& path) {
  auto in = open(path);
  return read_complex(in);
}

void write_complex(std::ostream& out, const WeightedComplex& X) {
  const int d = X.dimension();
  out << "dim " << d << '\n';
  const auto& w = X.weights(d);
  for (std::size_t j = 0; j < X.size(d); ++j) {
    out << X.face(d, j).to_string() << " : " << format_double(w[static_cast<Eigen::Index>(j)])
        << '\n';
  }
}

GradedPoset read_poset(std::istream& in) {
  const auto lines = content_lines(in);
  if (lines.empty()) throw ValidationError("empty poset file");
  const auto head = tokens(lines[0].text);
  if (head.size() != 2 || head[0] != "poset") fail(lines[0], "expected header 'poset <d>'");
  const long long d = parse_int(lines[0], head[1]);
  if (d < 0) fail(lines[0], "dimension must be non-negative");

  std::vector<PosetLevel> levels(static_cast<std::size_t>(d + 2));
  std::vector<std::vector<double>> top_weights(1);
  std::vector<std::vector<Eigen::Triplet<double>>> covers(levels.size());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    const auto t = tokens(l.text);
    if (t[0] == "element") {
      if (t.size() != 4 && t.size() != 5) fail(l, "expected 'element <level> <index> <label> [<weight>]'");
      const long long lvl = parse_int(l, t[1]);
      if (lvl < -1 || lvl > d) fail(l, "level out of range");
      auto& L = levels[static_cast<std::size_t>(lvl + 1)];
      if (parse_int(l, t[2]) != static_cast<long long>(L.labels.size())) {
        fail(l, "element indices must be consecutive from 0 within a level");
      }
      L.labels.push_back(t[3]);
      if (lvl == d) {
        if (t.size() != 5) fail(l, "top-level elements need a weight");
        top_weights[0].push_back(parse_double(l, t[4]));
      } else if (t.size() == 5) {
        fail(l, "weights are only given on the top level");
      }
    } else if (t[0] == "cover") {
      if (t.size() != 5) fail(l, "expected 'cover <level> <upper> <lower> <probability>'");
      const long long lvl = parse_int(l, t[1]);
      if (lvl < 0 || lvl > d) fail(l, "cover level out of range");
      const long long up = parse_int(l, t[2]);
      const long long lo = parse_int(l, t[3]);
      if (up < 0 || lo < 0) fail(l, "negative element index");
      covers[static_cast<std::size_t>(lvl + 1)].emplace_back(
          static_cast<int>(up), static_cast<int>(lo), parse_double(l, t[4]));
    } else {
      fail(l, "unknown record '" + t[0] + "'");
    }
  }
  for (std::size_t k = 1; k < levels.size(); ++k) {
    const auto rows = static_cast<int>(levels[k].labels.size());
    const auto cols = static_cast<int>(levels[k - 1].labels.size());
    for (const auto& tr : covers[k]) {
      if (tr.row() >= rows || tr.col() >= cols) {
        throw ValidationError("cover at level " + std::to_string(k - 1) +
                              " references an unknown element");
      }
    }
    levels[k].down.resize(rows, cols);
    levels[k].down.setFromTriplets(covers[k].begin(), covers[k].end());
  }
  levels.back().weights = Eigen::Map<const Eigen::VectorXd>(
      top_weights[0].data(), static_cast<Eigen::Index>(top_weights[0].size()));
  return GradedPoset::from_levels(std::move(levels));
}

void write_poset(std::ostream& out, const GradedPoset& P) {
  const int d = P.dimension();
  out << "poset " << d << '\n';
  for (int i = -1; i <= d; ++i) {
    for (std::size_t j = 0; j < P.size(i); ++j) {
      const std::string& lab = P.label(i, j);
      if (lab.empty() || lab.find_first_of(" \t") != std::string::npos) {
        throw ValidationError("poset label '" + lab + "' cannot be written");
      }
      out << "element " << i << ' ' << j << ' ' << lab;
      if (i == d) out << ' ' << format_double(P.weights(d)[static_cast<Eigen::Index>(j)]);
      out << '\n';
    }
  }
  for (int i = 0; i <= d; ++i) {
    const SparseMatrix& M = P.down_transition(i);
    for (Eigen::Index r = 0; r < M.outerSize(); ++r) {
      for (SparseMatrix::InnerIterator it(M, r); it; ++it) {
        out << "cover " << i << ' ' << it.row() << ' ' << it.col() << ' '
            << format_double(it.value()) << '\n';
      }
    }
  }
}

AnyStructure read_structure_file(const std::string& path) {
  std::string first;
  {
    auto in = open(path);
    const auto lines = content_lines(in);
    if (lines.empty()) throw ValidationError("'" + path + "' is empty");
    first = tokens(lines[0].text)[0];
  }
  auto in = open(path);
  if (first == "dim") return read_complex(in);
  if (first == "poset") return read_poset(in);
  throw ValidationError("'" + path + "': expected a 'dim' or 'poset' header");
}

LevelFunction read_function(std::istream& in, const WeightedComplex& X) {
  const auto lines = content_lines(in);
  if (lines.empty()) throw ValidationError("empty function file");
  int level = -2;
  Eigen::VectorXd values;
  std::vector<bool> seen;
  for (const auto& l : lines) {
    const auto [lhs, rhs] = split_colon(l);
    Face f = parse_face(l, lhs);
    if (level == -2) {
      level = f.dimension();
      if (level > X.dimension()) fail(l, "face dimension exceeds the complex");
      values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(X.size(level)));
      seen.assign(X.size(level), false);
    } else if (f.dimension() != level) {
      throw DimensionMismatchError("line " + std::to_string(l.number) +
                                   ": all faces of a function must share one level");
    }
    const auto idx = X.index_of(f);
    if (!idx) fail(l, "face " + f.to_string() + " is not in the complex");
    if (seen[*idx]) fail(l, "face " + f.to_string() + " listed twice");
    seen[*idx] = true;
    const auto vt = tokens(rhs);
    if (vt.size() != 1) fail(l, "expected a single value after ':'");
    values[static_cast<Eigen::Index>(*idx)] = parse_double(l, vt[0]);
  }
  for (std::size_t j = 0; j < seen.size(); ++j) {
    if (!seen[j]) {
      throw ValidationError("function file has no value for face " +
                            X.face(level, j).to_string());
    }
  }
  return {level, std::move(values)};
}

LevelFunction read_function(std::istream& in, const GradedPoset& P) {
  const auto lines = content_lines(in);
  if (lines.empty()) throw ValidationError("empty function file");
  int level = -2;
  Eigen::VectorXd values;
  std::vector<bool> seen;
  for (const auto& l : lines) {
    const auto [lhs, rhs] = split_colon(l);
    const auto lt = tokens(lhs);
    if (lt.size() != 1) fail(l, "expected a single element label before ':'");
    int found = -2;
    std::size_t idx = 0;
    if (level == -2) {
      for (int i = P.dimension(); i >= -1; --i) {
        if (auto j = P.find(i, lt[0])) {
          found = i;
          idx = *j;
          break;
        }
      }
      if (found == -2) fail(l, "unknown element '" + lt[0] + "'");
      level = found;
      values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(P.size(level)));
      seen.assign(P.size(level), false);
    } else {
      auto j = P.find(level, lt[0]);
      if (!j) fail(l, "element '" + lt[0] + "' is not on level " + std::to_string(level));
      idx = *j;
    }
    if (seen[idx]) fail(l, "element '" + lt[0] + "' listed twice");
    seen[idx] = true;
    const auto vt = tokens(rhs);
    if (vt.size() != 1) fail(l, "expected a single value after ':'");
    values[static_cast<Eigen::Index>(idx)] = parse_double(l, vt[0]);
  }
  for (std::size_t j = 0; j < seen.size(); ++j) {
    if (!seen[j]) {
      throw ValidationError("function file has no value for element '" + P.label(level, j) +
                            "'");
    }
  }
  return {level, std::move(values)};
}

LevelFunction read_function_file(const std::string& path, const AnyStructure& S) {
  auto in = open(path);
  return std::visit([&](const auto& X) { return read_function(in, X); }, S);
}

void write_function(std::ostream& out, const LevelFunction& f, const WeightedComplex& X) {
  if (f.size() != X.size(f.level)) {
    throw DimensionMismatchError("function length does not match level size");
  }
  for (std::size_t j = 0; j < f.size(); ++j) {
    const Face& s = X.face(f.level, j);
    out << (s.empty() ? std::string() : s.to_string()) << " : "
        << format_double(f.values[static_cast<Eigen::Index>(j)]) << '\n';
  }
}

void write_coordinate_list(std::ostream& out, const SparseMatrix& M) {
  for (Eigen::Index r = 0; r < M.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(M, r); it; ++it) {
      out << it.row() << ' ' << it.col() << ' ' << format_double(it.value()) << '\n';
    }
  }
}

}  // namespace hdx
