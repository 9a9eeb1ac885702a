#include "matgrow/io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace matgrow {

namespace {

// re-throws a parse failure with the line/column where the stream stopped
[[noreturn]] void rethrow_at_position(const std::string& path,
                                      std::istream& in,
                                      const std::exception& e) {
  in.clear();
  auto off = in.tellg();
  long line = 1, col = 1;
  if (off > 0) {
    in.seekg(0);
    for (long i = 0; i < static_cast<long>(off); ++i) {
      if (in.get() == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  }
  throw std::invalid_argument(path + ":" + std::to_string(line) + ":" +
                              std::to_string(col) + ": " + e.what());
}

std::vector<Bits> enumerate_bases(const Matroid& m) {
  int r = m.rank();
  auto els = m.ground().elems();
  int n = static_cast<int>(els.size());
  if (n > 18)
    throw std::invalid_argument("matroid serialization: |E| > 18 unsupported");
  std::vector<Bits> bases;
  std::function<void(int, Bits, int)> rec = [&](int start, Bits cur, int cnt) {
    if (cnt == r) {
      bases.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      Bits nxt = cur.with(els[i]);
      if (m.rank(nxt) == cnt + 1) rec(i + 1, nxt, cnt + 1);
    }
  };
  rec(0, Bits(), 0);
  return bases;
}

// compact ground slots to 0..n-1 in increasing slot order
std::vector<int> compact_map(const Matroid& m) {
  std::vector<int> of(m.slots(), -1);
  int next = 0;
  for (int e = m.ground().lowest(); e >= 0; e = m.ground().next(e + 1))
    of[e] = next++;
  return of;
}

}  // namespace

std::string format_matroid(const Matroid& m, const std::string& name) {
  std::ostringstream os;
  os << "matroid " << (name.empty() ? "unnamed" : name) << "\n";
  const LinearData* ld = m.linear_data();
  if (ld && m.ground() == Bits::range(m.slots())) {
    os << "type linear\n";
    os << format_matrix(ld->field->order(), ld->cols);
    return os.str();
  }
  os << "type explicit\n";
  os << "rank " << m.rank() << "\n";
  os << "elements " << m.size() << "\n";
  os << "bases\n";
  auto of = compact_map(m);
  for (const Bits& b : enumerate_bases(m)) {
    bool first = true;
    for (int e = b.lowest(); e >= 0; e = b.next(e + 1)) {
      if (!first) os << ' ';
      os << of[e];
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

Matroid read_matroid(std::istream& in) {
  std::string kw, name, type;
  in >> kw;
  if (kw != "matroid")
    throw std::invalid_argument("matroid: expected 'matroid <name>'");
  in >> name;
  in >> kw >> type;
  if (kw != "type")
    throw std::invalid_argument("matroid: expected 'type linear|explicit'");
  if (type == "linear") {
    int q = 0;
    GFMatrix cols = parse_matrix(in, q);
    return Matroid::linear(Field::get(q), cols, name);
  }
  if (type != "explicit")
    throw std::invalid_argument("matroid: unknown type '" + type + "'");
  int r = -1, n = -1;
  in >> kw >> r;
  if (kw != "rank") throw std::invalid_argument("matroid: expected 'rank <r>'");
  in >> kw >> n;
  if (kw != "elements")
    throw std::invalid_argument("matroid: expected 'elements <n>'");
  in >> kw;
  if (kw != "bases") throw std::invalid_argument("matroid: expected 'bases'");
  in.ignore();
  std::vector<Bits> bases;
  std::string line;
  while (true) {
    std::istream::pos_type pos = in.tellg();
    if (!std::getline(in, line)) break;
    // the block ends at a blank line or at the next keyword line
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) break;
    if (!std::isdigit(static_cast<unsigned char>(line[first]))) {
      in.clear();
      in.seekg(pos);
      break;
    }
    std::istringstream ls(line);
    Bits b;
    int e;
    while (ls >> e) {
      if (e < 0 || e >= n)
        throw std::invalid_argument("matroid: basis element out of range");
      b.set(e);
    }
    if (b.count() != r)
      throw std::invalid_argument("matroid: basis of wrong size");
    bases.push_back(b);
  }
  if (r == 0 && bases.empty()) bases.push_back(Bits());
  Matroid m = Matroid::from_bases(n, bases, name);
  return m;
}

Matroid load_matroid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matroid file: " + path);
  try {
    return read_matroid(in);
  } catch (const std::invalid_argument& e) {
    rethrow_at_position(path, in, e);
  }
}

void save_matroid(const std::string& path, const Matroid& m,
                  const std::string& name) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write matroid file: " + path);
  out << format_matroid(m, name);
}

std::string format_certificate(const ProjectionCertificate& c) {
  std::ostringstream os;
  os << "q " << c.q << "\n";
  auto of = compact_map(c.lifted);
  os << "K";
  for (int e = c.K.lowest(); e >= 0; e = c.K.next(e + 1)) os << ' ' << of[e];
  os << "\n";
  os << "seed " << (c.seed ? std::to_string(*c.seed) : "none") << "\n";
  os << format_matroid(c.lifted, "lifted");
  os << format_matroid(c.projected, "projected");
  return os.str();
}

ProjectionCertificate read_certificate(std::istream& in) {
  std::string kw;
  ProjectionCertificate c;
  in >> kw >> c.q;
  if (kw != "q") throw std::invalid_argument("certificate: expected 'q <order>'");
  in >> kw;
  if (kw != "K") throw std::invalid_argument("certificate: expected 'K ...'");
  std::string rest;
  std::getline(in, rest);
  {
    std::istringstream ls(rest);
    int e;
    while (ls >> e) c.K.set(e);
  }
  in >> kw >> rest;
  if (kw != "seed")
    throw std::invalid_argument("certificate: expected 'seed <u64|none>'");
  if (rest != "none") c.seed = std::stoull(rest);
  c.k = c.K.count();
  c.lifted = read_matroid(in);
  c.geometry = c.lifted.remove(c.K);
  c.projected = c.lifted.contract(c.K);
  // the projected block is informative; cross-check it against the
  // reconstruction
  Matroid stored = read_matroid(in);
  if (stored.size() != c.projected.size() ||
      stored.rank() != c.projected.rank())
    throw std::invalid_argument(
        "certificate: stored projection differs from lifted/K");
  validate_certificate(c);
  return c;
}

ProjectionCertificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open certificate: " + path);
  try {
    return read_certificate(in);
  } catch (const std::invalid_argument& e) {
    rethrow_at_position(path, in, e);
  }
}

std::string format_sum_spec(const SumSpec& spec) {
  std::ostringstream os;
  os << format_matroid(spec.left, spec.left.name().empty() ? "left" : spec.left.name());
  os << format_matroid(spec.right,
                       spec.right.name().empty() ? "right" : spec.right.name());
  auto lof = compact_map(spec.left);
  auto rof = compact_map(spec.right);
  os << "shared";
  for (int e = spec.shared.lowest(); e >= 0; e = spec.shared.next(e + 1))
    os << ' ' << lof[e] << ':' << rof[e];
  os << "\n";
  return os.str();
}

SumSpec read_sum_spec(std::istream& in) {
  Matroid left = read_matroid(in);
  Matroid right = read_matroid(in);
  std::string kw;
  in >> kw;
  if (kw != "shared")
    throw std::invalid_argument("sum spec: expected 'shared a:b ...'");
  std::string rest;
  std::getline(in, rest);
  std::istringstream ls(rest);
  std::string pair;
  // right gets relabelled into left's universe: shared pairs collapse,
  // the remaining right elements move above left's slots
  std::vector<int> rmap(right.slots(), -1);
  Bits shared;
  while (ls >> pair) {
    auto colon = pair.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("sum spec: malformed shared pair");
    int a = std::stoi(pair.substr(0, colon));
    int b = std::stoi(pair.substr(colon + 1));
    if (!left.ground().test(a) || !right.ground().test(b))
      throw std::invalid_argument("sum spec: shared pair out of range");
    rmap[b] = a;
    shared.set(a);
  }
  int next = left.slots();
  for (int e = right.ground().lowest(); e >= 0; e = right.ground().next(e + 1))
    if (rmap[e] < 0) rmap[e] = next++;
  SumSpec spec;
  spec.left = left;
  spec.right = relabel(right, rmap, next);
  spec.shared = shared;
  return spec;
}

std::string format_density_report(const DensityReport& r, int q) {
  std::ostringstream os;
  os << "density q=" << q << " k=" << r.k << " eps=" << r.eps << " d=" << r.d
     << " qd=" << r.d_raw << " in_bound=" << (r.in_bound ? "yes" : "no")
     << " floor_ok=" << (r.floor_ok ? "yes" : "no") << "\n";
  return os.str();
}

std::string format_stack_witness(const StackWitness& w) {
  std::ostringstream os;
  os << "stack q=" << w.q << " t=" << w.t << " layers=" << w.layers.size()
     << "\n";
  for (const Bits& l : w.layers) {
    os << "layer";
    for (int e = l.lowest(); e >= 0; e = l.next(e + 1)) os << ' ' << e;
    os << "\n";
  }
  return os.str();
}

}  // namespace matgrow
