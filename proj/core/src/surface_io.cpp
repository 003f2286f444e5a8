#include "flatline/surface_io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "flatline/billiard.hpp"
#include "flatline/error.hpp"

namespace flatline {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error(ErrorCode::ConfigParse, "line " + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& tok, int line) {
  const std::string t = trim(tok);
  if (t.find('/') != std::string::npos) {
    try {
      return Rational::parse(t).to_double();
    } catch (const Error&) {
      fail(line, "bad rational '" + t + "'");
    }
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (...) {
    fail(line, "bad number '" + t + "'");
  }
  if (used != t.size()) fail(line, "bad number '" + t + "'");
  return v;
}

std::string strip_brackets(const std::string& value, int line) {
  const std::string v = trim(value);
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') fail(line, "expected [ ... ]");
  return v.substr(1, v.size() - 2);
}

std::vector<Vec2> parse_points(const std::string& value, int line) {
  const std::string body = strip_brackets(value, line);
  std::vector<Vec2> pts;
  std::size_t pos = 0;
  while (true) {
    const auto open = body.find('(', pos);
    if (open == std::string::npos) break;
    const auto close = body.find(')', open);
    if (close == std::string::npos) fail(line, "unclosed point");
    const std::string inner = body.substr(open + 1, close - open - 1);
    const auto comma = inner.find(',');
    if (comma == std::string::npos) fail(line, "point needs two coordinates");
    pts.push_back({parse_number(inner.substr(0, comma), line), parse_number(inner.substr(comma + 1), line)});
    pos = close + 1;
  }
  return pts;
}

std::vector<Rational> parse_rationals(const std::string& value, int line) {
  const std::string body = strip_brackets(value, line);
  std::vector<Rational> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(Rational::parse(item));
    } catch (const Error&) {
      fail(line, "bad rational '" + item + "'");
    }
  }
  return out;
}

std::pair<std::string, int> parse_edge(const std::string& tok, int line) {
  const auto dot = tok.rfind('.');
  if (dot == std::string::npos || dot == 0) fail(line, "edge must be <polygon>.<index>");
  try {
    return {tok.substr(0, dot), std::stoi(tok.substr(dot + 1))};
  } catch (...) {
    fail(line, "bad edge index in '" + tok + "'");
  }
}

}  // namespace

SurfaceSpec parse_surface_spec(std::istream& in) {
  SurfaceSpec spec;
  enum class Block { None, Polygon, Billiard } block = Block::None;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;

    if (line == "}") {
      if (block == Block::None) fail(line_no, "unmatched }");
      if (block == Block::Polygon && spec.polygons.back().vertices.empty())
        fail(line_no, "polygon without vertices");
      block = Block::None;
      continue;
    }
    if (block == Block::None && line.rfind("polygon", 0) == 0 && line.back() == '{') {
      const std::string id = trim(line.substr(7, line.size() - 8));
      if (id.empty() || id.find_first_of(" \t.") != std::string::npos) fail(line_no, "bad polygon id");
      for (const auto& p : spec.polygons)
        if (p.id == id) fail(line_no, "duplicate polygon id '" + id + "'");
      spec.polygons.push_back({id, {}});
      block = Block::Polygon;
      continue;
    }
    if (block == Block::None && line.rfind("billiard", 0) == 0 && line.back() == '{') {
      if (spec.billiard) fail(line_no, "second billiard block");
      spec.billiard.emplace();
      block = Block::Billiard;
      continue;
    }
    if (block == Block::None && line.rfind("glue", 0) == 0 && line.size() > 4 && std::isspace(static_cast<unsigned char>(line[4]))) {
      std::string rest = line.substr(4);
      if (const auto arrow = rest.find("<->"); arrow != std::string::npos) rest.replace(arrow, 3, " ");
      std::stringstream ss(rest);
      std::string a, b, extra;
      ss >> a >> b;
      if (a.empty() || b.empty() || (ss >> extra)) fail(line_no, "glue needs exactly two edges");
      const auto [pa, ea] = parse_edge(a, line_no);
      const auto [pb, eb] = parse_edge(b, line_no);
      spec.gluings.push_back({pa, ea, pb, eb});
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    switch (block) {
      case Block::None:
        if (key == "name")
          spec.name = value;
        else
          fail(line_no, "unknown key '" + key + "'");
        break;
      case Block::Polygon:
        if (key == "vertices")
          spec.polygons.back().vertices = parse_points(value, line_no);
        else
          fail(line_no, "unknown polygon key '" + key + "'");
        break;
      case Block::Billiard:
        if (key == "angles")
          spec.billiard->angles = parse_rationals(value, line_no);
        else if (key == "vertices")
          spec.billiard->vertices = parse_points(value, line_no);
        else
          fail(line_no, "unknown billiard key '" + key + "'");
        break;
    }
  }
  if (block != Block::None) fail(line_no, "unterminated block");
  if (spec.billiard && !spec.polygons.empty()) fail(line_no, "billiard and polygon blocks are exclusive");
  if (!spec.billiard && spec.polygons.empty()) fail(line_no, "no polygons");
  if (spec.billiard && spec.billiard->angles.empty() && spec.billiard->vertices.empty())
    fail(line_no, "billiard block needs angles or vertices");
  return spec;
}

SurfaceSpec parse_surface_spec_string(const std::string& text) {
  std::istringstream in(text);
  return parse_surface_spec(in);
}

SurfaceSpec load_surface_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return parse_surface_spec(in);
}

TranslationSurface surface_from_spec(const SurfaceSpec& spec) {
  if (spec.billiard) {
    const auto& b = *spec.billiard;
    if (!b.vertices.empty()) return unfold_billiard(PlanarPolygon{"P", b.vertices});
    return unfold_billiard(b.angles);
  }
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < spec.polygons.size(); ++i) index[spec.polygons[i].id] = static_cast<int>(i);
  std::vector<EdgeGluing> gluings;
  for (const auto& g : spec.gluings) {
    const auto ia = index.find(g.polygon_a), ib = index.find(g.polygon_b);
    if (ia == index.end() || ib == index.end())
      throw Error(ErrorCode::UnmatchedEdge, "glue references unknown polygon");
    gluings.push_back({{ia->second, g.edge_a}, {ib->second, g.edge_b}});
  }
  return TranslationSurface::build(spec.polygons, gluings);
}

void write_surface_spec(std::ostream& out, const TranslationSurface& s, const std::string& name) {
  const auto old_flags = out.flags();
  const auto old_prec = out.precision();
  out << std::setprecision(17);
  out << "name = " << name << "\n";
  for (const auto& p : s.polygons()) {
    out << "polygon " << p.id << " {\n  vertices = [";
    for (std::size_t i = 0; i < p.size(); ++i)
      out << (i ? ", " : "") << "(" << p.vertices[i].x << ", " << p.vertices[i].y << ")";
    out << "]\n}\n";
  }
  for (const auto& g : s.gluings())
    out << "glue " << s.polygon(g.a.polygon).id << "." << g.a.edge << " <-> " << s.polygon(g.b.polygon).id << "."
        << g.b.edge << "\n";
  out.flags(old_flags);
  out.precision(old_prec);
}

}  // namespace flatline
