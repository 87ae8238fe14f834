#include "eigenmass/manifest.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace emass {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

const std::set<std::string> kKinds = {"modes",   "mass-scan", "exponent",    "supnorm",
                                      "thm2",    "rellich",   "green-check", "report"};

double parse_num(const std::string& s, const std::string& key) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (...) {
    throw ManifestError("manifest: bad number for " + key + ": '" + s + "'");
  }
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size()) throw ManifestError("manifest: trailing junk for " + key);
  return v;
}

long parse_int(const std::string& s, const std::string& key) {
  const double v = parse_num(s, key);
  const long i = static_cast<long>(v);
  if (static_cast<double>(i) != v) throw ManifestError("manifest: " + key + " must be integral");
  return i;
}

std::uint64_t parse_u64(const std::string& s, const std::string& key) {
  std::size_t pos = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (...) {
    throw ManifestError("manifest: bad unsigned integer for " + key + ": '" + s + "'");
  }
  if (pos != s.size()) throw ManifestError("manifest: trailing junk for " + key);
  return v;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

Vec3 parse_center(const std::string& s) {
  std::istringstream is(s);
  Vec3 p;
  if (!(is >> p.x >> p.y)) throw ManifestError("manifest: bad center '" + s + "'");
  is >> p.z;  // optional third coordinate
  return p;
}

}  // namespace

ExperimentManifest parse_manifest_text(const std::string& text) {
  ExperimentManifest m;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  bool saw_kind = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = t.substr(1, t.size() - 2);
      if (section != "experiment" && section != "modes" && section != "centers" &&
          section != "mu" && section != "output")
        throw ManifestError("manifest: unknown section [" + section + "]");
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ManifestError("manifest: expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    if (section == "experiment") {
      if (key == "kind") {
        if (!kKinds.count(val)) throw ManifestError("manifest: unknown kind '" + val + "'");
        m.kind = val;
        saw_kind = true;
      } else if (key == "domain") {
        try {
          m.domain = domain_kind_from_string(val);
        } catch (const std::exception& e) {
          throw ManifestError(e.what());
        }
      } else if (key == "bc") {
        try {
          m.bc = bc_from_string(val);
        } catch (const std::exception& e) {
          throw ManifestError(e.what());
        }
      } else if (key == "resolution") {
        m.resolution = static_cast<int>(parse_int(val, key));
      } else if (key == "count") {
        m.count = static_cast<int>(parse_int(val, key));
      } else if (key == "seed") {
        m.seed = parse_u64(val, key);
      } else if (key == "threads") {
        m.threads = static_cast<int>(parse_int(val, key));
      } else if (key == "lambda2_min") {
        m.lambda2_min = parse_num(val, key);
      } else if (key == "lambda2_max") {
        m.lambda2_max = parse_num(val, key);
      } else {
        throw ManifestError("manifest: unknown key '" + key + "' in [experiment]");
      }
    } else if (section == "modes") {
      if (key != "mode") throw ManifestError("manifest: only 'mode' entries in [modes]");
      m.modes.push_back(val);
    } else if (section == "centers") {
      if (key != "center") throw ManifestError("manifest: only 'center' entries in [centers]");
      m.centers.push_back(parse_center(val));
    } else if (section == "mu") {
      if (key == "min")
        m.mu_min = parse_num(val, key);
      else if (key == "max")
        m.mu_max = parse_num(val, key);
      else if (key == "count")
        m.mu_count = static_cast<int>(parse_int(val, key));
      else
        throw ManifestError("manifest: unknown key '" + key + "' in [mu]");
    } else if (section == "output") {
      if (key == "dir")
        m.out_dir = val;
      else if (key == "cache_dir")
        m.cache_dir = val;
      else
        throw ManifestError("manifest: unknown key '" + key + "' in [output]");
    } else {
      throw ManifestError("manifest: key outside any section at line " + std::to_string(lineno));
    }
  }
  if (!saw_kind) throw ManifestError("manifest: missing kind");
  if (m.resolution < 8 && m.kind != "report")
    throw ManifestError("manifest: resolution must be >= 8");
  if (m.threads < 1 || m.threads > 256) throw ManifestError("manifest: threads in [1,256]");
  if (m.mu_count != 0 && m.mu_count < 2) throw ManifestError("manifest: mu count >= 2");
  if (m.mu_count > 0 && !(m.mu_min > 0.0 && m.mu_max > m.mu_min))
    throw ManifestError("manifest: need 0 < mu min < mu max");
  return m;
}

ExperimentManifest parse_manifest(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open manifest " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_manifest_text(ss.str());
}

std::string manifest_to_text(const ExperimentManifest& m) {
  std::ostringstream os;
  os << "[experiment]\n";
  os << "kind = " << m.kind << "\n";
  os << "domain = " << to_string(m.domain) << "\n";
  os << "bc = " << to_string(m.bc) << "\n";
  os << "resolution = " << m.resolution << "\n";
  os << "count = " << m.count << "\n";
  os << "seed = " << m.seed << "\n";
  os << "threads = " << m.threads << "\n";
  os << "lambda2_min = " << format_double(m.lambda2_min) << "\n";
  os << "lambda2_max = " << format_double(m.lambda2_max) << "\n";
  if (!m.modes.empty()) {
    os << "[modes]\n";
    for (const std::string& s : m.modes) os << "mode = " << s << "\n";
  }
  if (!m.centers.empty()) {
    os << "[centers]\n";
    for (const Vec3& c : m.centers)
      os << "center = " << format_double(c.x) << " " << format_double(c.y) << " "
         << format_double(c.z) << "\n";
  }
  os << "[mu]\n";
  os << "min = " << format_double(m.mu_min) << "\n";
  os << "max = " << format_double(m.mu_max) << "\n";
  os << "count = " << m.mu_count << "\n";
  os << "[output]\n";
  os << "dir = " << m.out_dir << "\n";
  if (!m.cache_dir.empty()) os << "cache_dir = " << m.cache_dir << "\n";
  return os.str();
}

void write_manifest(const ExperimentManifest& m, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write manifest " + path);
  os << manifest_to_text(m);
  if (!os) throw IoError("manifest write failed: " + path);
}

}  // namespace emass
