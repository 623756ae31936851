#include "slabdiff/scenario.hpp"

#include "slabdiff/error.hpp"
#include "slabdiff/fd.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace slabdiff {
namespace {

template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  std::size_t line = 0;
};

using Section = std::map<std::string, Entry, std::less<>>;

class Reader {
public:
  Reader(std::string section, Section entries)
      : section_(std::move(section)), entries_(std::move(entries)) {}

  bool contains(std::string_view key) const {
    return entries_.find(key) != entries_.end();
  }

  const Entry *find(std::string_view key) {
    const auto it = entries_.find(key);
    if (it == entries_.end())
      return nullptr;
    used_.insert(std::string(key));
    return &it->second;
  }

  std::optional<double> number(std::string_view key) {
    const Entry *e = find(key);
    if (!e)
      return std::nullopt;
    return parse_double(e->value, e->line, key);
  }

  std::optional<long long> integer(std::string_view key) {
    const Entry *e = find(key);
    if (!e)
      return std::nullopt;
    long long out = 0;
    const auto *first = e->value.data();
    const auto *last = first + e->value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
      throw ParseError("'" + std::string(key) + "' expects an integer, got '" +
                           e->value + "'",
                       e->line);
    return out;
  }

  std::optional<bool> boolean(std::string_view key) {
    const Entry *e = find(key);
    if (!e)
      return std::nullopt;
    if (e->value == "true")
      return true;
    if (e->value == "false")
      return false;
    throw ParseError("'" + std::string(key) + "' expects true or false",
                     e->line);
  }

  std::optional<std::vector<double>> numbers(std::string_view key) {
    const Entry *e = find(key);
    if (!e)
      return std::nullopt;
    std::vector<double> out;
    for (const auto &item : split(e->value))
      out.push_back(parse_double(item, e->line, key));
    return out;
  }

  std::optional<std::vector<std::string>> words(std::string_view key) {
    const Entry *e = find(key);
    if (!e)
      return std::nullopt;
    return split(e->value);
  }

  std::size_t line_of(std::string_view key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  void reject_unused() const {
    for (const auto &[key, entry] : entries_)
      if (!used_.contains(key))
        throw ParseError("unknown key '" + key + "' in [" + section_ + "]",
                         entry.line);
  }

  static double parse_double(std::string_view text, std::size_t line,
                             std::string_view key) {
    double out = 0.0;
    const auto *first = text.data();
    const auto *last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || !std::isfinite(out))
      throw ParseError("'" + std::string(key) + "' expects a number, got '" +
                           std::string(text) + "'",
                       line);
    return out;
  }

private:
  static std::vector<std::string> split(std::string_view text) {
    std::vector<std::string> out;
    if (trim(text).empty())
      return out;
    std::size_t pos = 0;
    while (true) {
      const auto comma = text.find(',', pos);
      out.emplace_back(trim(text.substr(pos, comma - pos)));
      if (comma == std::string_view::npos)
        break;
      pos = comma + 1;
    }
    return out;
  }

  std::string section_;
  Section entries_;
  std::set<std::string, std::less<>> used_;
};

const std::set<std::string, std::less<>> kSections = {"scenario", "profile",
                                                      "fd", "output"};

std::string join(const std::vector<double> &xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i)
      out += ',';
    out += format_double(xs[i]);
  }
  return out;
}

InitialProfile read_profile(Reader &r, std::size_t section_line) {
  const Entry *kind = r.find("kind");
  if (!kind)
    throw ParseError("[profile] needs a 'kind' key", section_line);
  const auto need = [&](std::string_view key) {
    auto x = r.number(key);
    if (!x)
      throw ParseError("profile kind '" + kind->value + "' needs '" +
                           std::string(key) + "'",
                       kind->line);
    return *x;
  };
  if (kind->value == "gaussian")
    return Gaussian{need("b"), need("B")};
  if (kind->value == "surface_cosh")
    return SurfaceCosh{need("s"), need("A")};
  if (kind->value == "uniform")
    return Uniform{need("level")};
  if (kind->value == "cosine_mode") {
    const auto m = r.integer("m");
    if (!m)
      throw ParseError("profile kind 'cosine_mode' needs 'm'", kind->line);
    return CosineMode{static_cast<int>(*m), need("offset"), need("amplitude")};
  }
  if (kind->value == "tabulated") {
    auto u = r.numbers("u");
    auto values = r.numbers("values");
    if (!u || !values)
      throw ParseError("profile kind 'tabulated' needs 'u' and 'values'",
                       kind->line);
    try {
      return Tabulated(Grid1D::from_points(std::move(*u)), std::move(*values));
    } catch (const Error &e) {
      throw ValidationError(std::string("tabulated profile: ") + e.what());
    }
  }
  throw ParseError("unknown profile kind '" + kind->value + "'", kind->line);
}

} // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{})
    throw Error("format_double failed");
  return std::string(buf, ptr);
}

bool Scenario::has(Model m) const {
  return std::find(models.begin(), models.end(), m) != models.end();
}

void validate(const Scenario &s) {
  const auto fail = [](const std::string &msg) { throw ValidationError(msg); };
  if (s.name.empty() ||
      s.name.find_first_of(" \t,=[]#/\\") != std::string::npos)
    fail("scenario name must be non-empty without spaces, '/', ',', '=', '#' "
         "or brackets");
  if (!(s.eps >= 0.0) || !std::isfinite(s.eps))
    fail("eps must be finite and >= 0");
  if (s.models.empty())
    fail("at least one model is required");
  for (std::size_t i = 0; i < s.models.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (s.models[i] == s.models[j])
        fail("model '" + std::string(to_string(s.models[i])) + "' listed twice");
  if (s.has(Model::hyperbolic) && s.eps == 0.0)
    fail("the hyperbolic model requires eps > 0");
  if (s.truncation_M < 1)
    fail("terms must be >= 1");
  if (s.u_points < 2)
    fail("u_points must be >= 2");
  try {
    validate(s.profile);
    (void)TimeGrid::from_points(s.v_list);
    if (s.v_range)
      (void)s.v_range->grid();
    for (double u : s.trace_u)
      require_in_slab(u);
  } catch (const Error &e) {
    fail(e.what());
  }
  if (s.v_list.empty() && s.trace_u.empty())
    fail("nothing to compute: give field times 'v' or trace points 'trace_u'");
  if (!s.trace_u.empty() && !s.v_range)
    fail("'trace_u' needs 'v_range'");
  if (s.v_range && s.trace_u.empty())
    fail("'v_range' needs 'trace_u'");
  if (!s.trace_u.empty() &&
      std::all_of(s.models.begin(), s.models.end(),
                  [](Model m) { return m == Model::fd; }))
    fail("traces need at least one series model (fd produces fields only)");
  if (s.output.events && s.trace_u.empty())
    fail("events output needs traces");
  if (s.output.wavefront && s.eps == 0.0)
    fail("the wavefront column needs eps > 0");
  if (!(s.output.v_min_cutoff >= 0.0) || !(s.output.prominence >= 0.0) ||
      !(s.output.monotone_slack >= 0.0))
    fail("output thresholds must be >= 0");
  if (s.fd.nu && *s.fd.nu < 2)
    fail("fd nu must be >= 2");
  if (s.fd.dv) {
    const int nu = s.fd.nu.value_or(kDefaultFdCells);
    if (*s.fd.dv > max_stable_dv(nu, s.eps))
      fail("fd dv=" + format_double(*s.fd.dv) +
           " violates the stability bound " +
           format_double(max_stable_dv(nu, s.eps)));
  }
}

Scenario parse_scenario(std::string_view text) {
  std::map<std::string, Section, std::less<>> sections;
  std::map<std::string, std::size_t, std::less<>> section_lines;
  std::string current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const auto raw = text.substr(pos, eol == std::string_view::npos
                                          ? std::string_view::npos
                                          : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("malformed section header", line_no);
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (!kSections.contains(current))
        throw ParseError("unknown section [" + current + "]", line_no);
      if (section_lines.contains(current))
        throw ParseError("duplicate section [" + current + "]", line_no);
      section_lines[current] = line_no;
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected key = value", line_no);
    if (current.empty())
      throw ParseError("key outside of any section", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty())
      throw ParseError("empty key", line_no);
    auto &sec = sections[current];
    if (sec.contains(key))
      throw ParseError("duplicate key '" + key + "'", line_no);
    sec[key] = Entry{value, line_no};
  }

  if (!sections.contains("scenario"))
    throw ParseError("missing [scenario] section", line_no);
  if (!sections.contains("profile"))
    throw ParseError("missing [profile] section", line_no);

  Scenario s;
  Reader sc("scenario", sections["scenario"]);
  if (const Entry *e = sc.find("name"))
    s.name = e->value;
  const auto eps = sc.number("eps");
  if (!eps)
    throw ParseError("[scenario] needs 'eps'", section_lines["scenario"]);
  s.eps = *eps;
  if (const auto m = sc.integer("terms"))
    s.truncation_M = static_cast<int>(*m);
  if (const auto n = sc.integer("u_points")) {
    if (*n < 0)
      throw ParseError("'u_points' must be positive", sc.line_of("u_points"));
    s.u_points = static_cast<std::size_t>(*n);
  }
  if (auto v = sc.numbers("v"))
    s.v_list = std::move(*v);
  if (const auto r = sc.numbers("v_range")) {
    if (r->size() != 3 || (*r)[2] < 1 || (*r)[2] != std::floor((*r)[2]))
      throw ParseError("'v_range' expects start,stop,count",
                       sc.line_of("v_range"));
    s.v_range = TimeRange{(*r)[0], (*r)[1], static_cast<std::size_t>((*r)[2])};
  }
  if (auto u = sc.numbers("trace_u"))
    s.trace_u = std::move(*u);
  const auto models = sc.words("models");
  if (!models)
    throw ParseError("[scenario] needs 'models'", section_lines["scenario"]);
  for (const auto &name : *models) {
    try {
      s.models.push_back(parse_model(name));
    } catch (const Error &e) {
      throw ParseError(e.what(), sc.line_of("models"));
    }
  }
  sc.reject_unused();

  Reader pr("profile", sections["profile"]);
  s.profile = read_profile(pr, section_lines["profile"]);
  pr.reject_unused();

  if (sections.contains("fd")) {
    Reader fr("fd", sections["fd"]);
    if (const auto nu = fr.integer("nu"))
      s.fd.nu = static_cast<int>(*nu);
    s.fd.dv = fr.number("dv");
    fr.reject_unused();
  }

  if (sections.contains("output")) {
    Reader orr("output", sections["output"]);
    auto &o = s.output;
    o.csv = orr.boolean("csv").value_or(o.csv);
    o.svg = orr.boolean("svg").value_or(o.svg);
    o.events = orr.boolean("events").value_or(o.events);
    o.wavefront = orr.boolean("wavefront").value_or(o.wavefront);
    o.v_min_cutoff = orr.number("v_min_cutoff").value_or(o.v_min_cutoff);
    o.prominence = orr.number("prominence").value_or(o.prominence);
    o.monotone_slack = orr.number("monotone_slack").value_or(o.monotone_slack);
    orr.reject_unused();
  }

  validate(s);
  return s;
}

std::string serialize(const Scenario &s) {
  std::ostringstream os;
  os << "[scenario]\n";
  os << "name = " << s.name << '\n';
  os << "eps = " << format_double(s.eps) << '\n';
  os << "terms = " << s.truncation_M << '\n';
  os << "u_points = " << s.u_points << '\n';
  os << "models = ";
  for (std::size_t i = 0; i < s.models.size(); ++i)
    os << (i ? "," : "") << to_string(s.models[i]);
  os << '\n';
  if (!s.v_list.empty())
    os << "v = " << join(s.v_list) << '\n';
  if (s.v_range)
    os << "v_range = " << format_double(s.v_range->start) << ','
       << format_double(s.v_range->stop) << ',' << s.v_range->count << '\n';
  if (!s.trace_u.empty())
    os << "trace_u = " << join(s.trace_u) << '\n';

  os << "\n[profile]\n";
  std::visit(
      overloaded{
          [&](const Gaussian &g) {
            os << "kind = gaussian\nb = " << format_double(g.b)
               << "\nB = " << format_double(g.B) << '\n';
          },
          [&](const SurfaceCosh &c) {
            os << "kind = surface_cosh\ns = " << format_double(c.s)
               << "\nA = " << format_double(c.A) << '\n';
          },
          [&](const Uniform &u) {
            os << "kind = uniform\nlevel = " << format_double(u.level) << '\n';
          },
          [&](const CosineMode &c) {
            os << "kind = cosine_mode\nm = " << c.m
               << "\noffset = " << format_double(c.offset)
               << "\namplitude = " << format_double(c.amplitude) << '\n';
          },
          [&](const Tabulated &t) {
            const auto pts = t.grid().points();
            os << "kind = tabulated\nu = "
               << join(std::vector<double>(pts.begin(), pts.end()))
               << "\nvalues = "
               << join(std::vector<double>(t.values().begin(),
                                           t.values().end()))
               << '\n';
          }},
      s.profile);

  if (s.fd.nu || s.fd.dv) {
    os << "\n[fd]\n";
    if (s.fd.nu)
      os << "nu = " << *s.fd.nu << '\n';
    if (s.fd.dv)
      os << "dv = " << format_double(*s.fd.dv) << '\n';
  }

  const auto &o = s.output;
  os << "\n[output]\n";
  os << "csv = " << (o.csv ? "true" : "false") << '\n';
  os << "svg = " << (o.svg ? "true" : "false") << '\n';
  os << "events = " << (o.events ? "true" : "false") << '\n';
  os << "wavefront = " << (o.wavefront ? "true" : "false") << '\n';
  os << "v_min_cutoff = " << format_double(o.v_min_cutoff) << '\n';
  os << "prominence = " << format_double(o.prominence) << '\n';
  os << "monotone_slack = " << format_double(o.monotone_slack) << '\n';
  return os.str();
}

std::string scenario_hash(const Scenario &s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : serialize(s)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string figure_preset_text(int figure) {
  const char *gaussian = "[profile]\nkind = gaussian\nb = 100\nB = 1\n";
  const char *surface = "[profile]\nkind = surface_cosh\ns = 10\nA = 1\n";
  const char *fields = "v = 0.0001,0.001,0.01,0.1,1\n";
  const char *traces = "v_range = 0,1,2001\ntrace_u = 0.5,0\n";
  std::ostringstream os;
  os << "[scenario]\nname = figure" << figure
     << "\neps = 0.13\nterms = 500\nu_points = 1001\n"
        "models = parabolic,hyperbolic\n";
  switch (figure) {
  case 1:
    os << fields << '\n' << gaussian << "\n[output]\nsvg = true\n";
    break;
  case 2:
    os << traces << '\n' << gaussian << "\n[output]\nsvg = true\nevents = true\n";
    break;
  case 3:
    os << fields << '\n'
       << surface << "\n[output]\nsvg = true\nwavefront = true\n";
    break;
  case 4:
    os << traces << '\n' << surface << "\n[output]\nsvg = true\nevents = true\n";
    break;
  default:
    throw InvalidParameter("figure must be 1, 2, 3 or 4");
  }
  return os.str();
}

Scenario figure_preset(int figure) {
  return parse_scenario(figure_preset_text(figure));
}

} // namespace slabdiff
