#include "shipland/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <json.hpp>
#include <sstream>

#include "shipland/error.hpp"

namespace shipland {

namespace {

using nlohmann::json;

struct Column {
  std::string name;
  std::function<double(const TickRecord&)> get;
  std::function<void(TickRecord&, double)> set;
};

#define SL_COL(name, expr)                                                  \
  Column {                                                                  \
    name, [](const TickRecord& r) { return static_cast<double>(r.expr); }, \
        [](TickRecord& r, double v) { r.expr = v; }                         \
  }

const std::vector<Column>& columns() {
  static const std::vector<Column> cols = {
      SL_COL("t", t),
      Column{"mode", [](const TickRecord& r) { return double(r.mode); },
             [](TickRecord& r, double v) { r.mode = static_cast<int>(std::lround(v)); }},
      SL_COL("cmd_pitch", cmd.pitch),
      SL_COL("cmd_roll", cmd.roll),
      SL_COL("cmd_heave", cmd.heave),
      SL_COL("cmd_yaw", cmd.yaw),
      SL_COL("x_m", position.x()),
      SL_COL("y_m", position.y()),
      SL_COL("z_m", position.z()),
      SL_COL("heading_deg", heading_deg),
      SL_COL("vx_mps", velocity.x()),
      SL_COL("vy_mps", velocity.y()),
      SL_COL("vz_mps", velocity.z()),
      SL_COL("ship_x_m", ship_x),
      SL_COL("ship_y_m", ship_y),
      SL_COL("ship_heading_deg", ship_heading_deg),
      SL_COL("deck_roll_deg", deck_roll_deg),
      SL_COL("deck_pitch_deg", deck_pitch_deg),
      SL_COL("deck_heave_m", deck_heave_m),
      SL_COL("true_forward_m", true_forward_m),
      SL_COL("true_left_m", true_left_m),
      SL_COL("true_height_m", true_height_m),
      SL_COL("true_rel_yaw_deg", true_rel_yaw_deg),
      Column{"has_estimate", [](const TickRecord& r) { return r.has_estimate ? 1.0 : 0.0; },
             [](TickRecord& r, double v) { r.has_estimate = v != 0.0; }},
      SL_COL("est_x_m", est_x),
      SL_COL("est_y_m", est_y),
      SL_COL("est_z_m", est_z),
      SL_COL("est_yaw_raw_deg", est_yaw_raw_deg),
      SL_COL("est_yaw_deg", est_yaw_deg),
      SL_COL("est_forward_m", est_forward_m),
      SL_COL("est_left_m", est_left_m),
      Column{"bar_detected", [](const TickRecord& r) { return r.bar_detected ? 1.0 : 0.0; },
             [](TickRecord& r, double v) { r.bar_detected = v != 0.0; }},
      Column{"ship_detected", [](const TickRecord& r) { return r.ship_detected ? 1.0 : 0.0; },
             [](TickRecord& r, double v) { r.ship_detected = v != 0.0; }},
  };
  return cols;
}

#undef SL_COL

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  out << content;
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + dir + ": " + ec.message());
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

json outcome_json(const EpisodeOutcome& o) {
  return {{"seed", o.seed},
          {"terminal", to_string(o.terminal)},
          {"inside_box", o.inside_box},
          {"end_time_s", o.end_time},
          {"touchdown_x_m", o.touchdown_x},
          {"touchdown_y_m", o.touchdown_y},
          {"touchdown_roll_deg", o.touchdown_roll_deg},
          {"touchdown_pitch_deg", o.touchdown_pitch_deg}};
}

TerminalEvent terminal_from(const std::string& s) {
  if (s == "landed") return TerminalEvent::Landed;
  if (s == "abort") return TerminalEvent::Abort;
  return TerminalEvent::Timeout;
}

EpisodeOutcome outcome_from(const json& j) {
  EpisodeOutcome o;
  o.seed = j.at("seed").get<std::uint64_t>();
  o.terminal = terminal_from(j.at("terminal").get<std::string>());
  o.inside_box = j.at("inside_box").get<bool>();
  o.end_time = j.at("end_time_s").get<double>();
  o.touchdown_x = j.at("touchdown_x_m").get<double>();
  o.touchdown_y = j.at("touchdown_y_m").get<double>();
  o.touchdown_roll_deg = j.at("touchdown_roll_deg").get<double>();
  o.touchdown_pitch_deg = j.at("touchdown_pitch_deg").get<double>();
  return o;
}

std::string with_config(const std::string& summary, const EpisodeConfig& cfg) {
  json j = json::parse(summary);
  j["config"] = json::parse(dump_config(cfg));
  return j.dump(2);
}

// ---- SVG --------------------------------------------------------------

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x, y;
  bool step = false;
};

struct Range {
  double lo = 0.0, hi = 1.0;
};

Range range_of(const std::vector<Series>& s, bool use_x) {
  double lo = INFINITY, hi = -INFINITY;
  for (const Series& ser : s)
    for (double v : use_x ? ser.x : ser.y)
      if (std::isfinite(v)) lo = std::min(lo, v), hi = std::max(hi, v);
  if (!std::isfinite(lo)) return {0.0, 1.0};
  if (hi - lo < 1e-9) lo -= 0.5, hi += 0.5;
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  return mag * (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0);
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class Svg {
 public:
  Svg(int w, int h) : w_(w), h_(h) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
         << "\" viewBox=\"0 0 " << w << ' ' << h << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }

  std::ostringstream& raw() { return out_; }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

  // Draws axes in the box (x, y, w, h) and returns the data-to-pixel map.
  struct Map {
    double px, py, pw, ph;
    Range xr, yr;
    double X(double v) const { return px + (v - xr.lo) / (xr.hi - xr.lo) * pw; }
    double Y(double v) const { return py + ph - (v - yr.lo) / (yr.hi - yr.lo) * ph; }
  };

  Map axes(double x, double y, double w, double h, Range xr, Range yr, const std::string& title,
           const std::string& xlabel, const std::string& ylabel) {
    Map m{x, y, w, h, xr, yr};
    out_ << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h
         << "\" fill=\"none\" stroke=\"#444\"/>\n";
    const double sx = nice_step(xr.hi - xr.lo), sy = nice_step(yr.hi - yr.lo);
    for (double v = std::ceil(xr.lo / sx) * sx; v <= xr.hi; v += sx) {
      out_ << "<line x1=\"" << m.X(v) << "\" y1=\"" << y << "\" x2=\"" << m.X(v) << "\" y2=\"" << y + h
           << "\" stroke=\"#ddd\"/>\n<text x=\"" << m.X(v) << "\" y=\"" << y + h + 13
           << "\" text-anchor=\"middle\">" << fmt(std::abs(v) < 1e-12 ? 0.0 : v) << "</text>\n";
    }
    for (double v = std::ceil(yr.lo / sy) * sy; v <= yr.hi; v += sy) {
      out_ << "<line x1=\"" << x << "\" y1=\"" << m.Y(v) << "\" x2=\"" << x + w << "\" y2=\"" << m.Y(v)
           << "\" stroke=\"#ddd\"/>\n<text x=\"" << x - 4 << "\" y=\"" << m.Y(v) + 4
           << "\" text-anchor=\"end\">" << fmt(std::abs(v) < 1e-12 ? 0.0 : v) << "</text>\n";
    }
    out_ << "<text x=\"" << x + w / 2 << "\" y=\"" << y - 6 << "\" text-anchor=\"middle\" font-weight=\"bold\">"
         << xml_escape(title) << "</text>\n<text x=\"" << x + w / 2 << "\" y=\"" << y + h + 27
         << "\" text-anchor=\"middle\">" << xml_escape(xlabel) << "</text>\n<text transform=\"translate(" << x - 38
         << ',' << y + h / 2 << ") rotate(-90)\" text-anchor=\"middle\">" << xml_escape(ylabel) << "</text>\n";
    return m;
  }

  void polyline(const Map& m, const Series& s) {
    out_ << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\" points=\"";
    double prev_y = 0.0;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (s.step && i > 0) out_ << m.X(s.x[i]) << ',' << m.Y(prev_y) << ' ';
      out_ << m.X(s.x[i]) << ',' << m.Y(s.y[i]) << ' ';
      prev_y = s.y[i];
    }
    out_ << "\"/>\n";
  }

  void legend(const Map& m, const std::vector<Series>& series) {
    double y = m.py + 12;
    for (const Series& s : series) {
      if (s.label.empty()) continue;
      out_ << "<line x1=\"" << m.px + m.pw - 120 << "\" y1=\"" << y - 4 << "\" x2=\"" << m.px + m.pw - 100
           << "\" y2=\"" << y - 4 << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n<text x=\""
           << m.px + m.pw - 95 << "\" y=\"" << y << "\">" << xml_escape(s.label) << "</text>\n";
      y += 13;
    }
  }

  Map panel(double x, double y, double w, double h, const std::vector<Series>& series, const std::string& title,
            const std::string& xlabel, const std::string& ylabel, std::optional<Range> yr = std::nullopt) {
    const Map m = axes(x, y, w, h, range_of(series, true), yr ? *yr : range_of(series, false), title, xlabel, ylabel);
    for (const Series& s : series) polyline(m, s);
    legend(m, series);
    return m;
  }

  void marker(const Map& m, double x, double y, const std::string& color) {
    out_ << "<circle cx=\"" << m.X(x) << "\" cy=\"" << m.Y(y) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
  }

 private:
  int w_, h_;
  std::ostringstream out_;
};

// Equal-aspect ranges covering both axes.
std::pair<Range, Range> equal_aspect(Range xr, Range yr, double w, double h) {
  const double scale = std::max((xr.hi - xr.lo) / w, (yr.hi - yr.lo) / h);
  const double cx = 0.5 * (xr.lo + xr.hi), cy = 0.5 * (yr.lo + yr.hi);
  return {{cx - 0.5 * scale * w, cx + 0.5 * scale * w}, {cy - 0.5 * scale * h, cy + 0.5 * scale * h}};
}

template <class F>
Series series_of(const std::vector<TickRecord>& ticks, const std::string& label, const std::string& color, F f,
                 bool only_estimates = false) {
  Series s{label, color, {}, {}};
  s.x.reserve(ticks.size());
  s.y.reserve(ticks.size());
  for (const TickRecord& r : ticks) {
    if (only_estimates && !r.has_estimate) continue;
    s.x.push_back(r.t);
    s.y.push_back(f(r));
  }
  return s;
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const Column& c : columns()) n.push_back(c.name);
    return n;
  }();
  return names;
}

void write_ticks_csv(const std::vector<TickRecord>& ticks, const std::string& path) {
  std::ostringstream out;
  const auto& cols = columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i].name;
  out << '\n';
  char buf[32];
  for (const TickRecord& r : ticks) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const auto end = std::to_chars(buf, buf + sizeof(buf), cols[i].get(r)).ptr;
      out << (i ? "," : "") << std::string_view(buf, end - buf);
    }
    out << '\n';
  }
  write_file(path, out.str());
}

std::vector<TickRecord> read_ticks_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ConfigInvalid, path + ": empty CSV");
  std::vector<const Column*> order;
  {
    std::istringstream hs(line);
    std::string name;
    while (std::getline(hs, name, ',')) {
      const auto& cols = columns();
      const auto it = std::find_if(cols.begin(), cols.end(), [&](const Column& c) { return c.name == name; });
      order.push_back(it == cols.end() ? nullptr : &*it);
    }
  }
  std::vector<TickRecord> ticks;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    TickRecord r;
    std::istringstream ls(line);
    std::string cell;
    std::size_t i = 0;
    for (; std::getline(ls, cell, ','); ++i) {
      if (i >= order.size()) throw Error(ErrorCode::ConfigInvalid, path + ": too many cells on row " + std::to_string(row));
      if (!order[i]) continue;
      try {
        order[i]->set(r, std::stod(cell));
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::ConfigInvalid, path + ": bad number on row " + std::to_string(row));
      }
    }
    if (i != order.size()) throw Error(ErrorCode::ConfigInvalid, path + ": short row " + std::to_string(row));
    ticks.push_back(r);
  }
  return ticks;
}

std::string episode_summary_json(const EpisodeLog& log) {
  json transitions = json::array();
  for (std::size_t i = 0; i < log.transitions.size(); ++i) {
    const ModeTransition& tr = log.transitions[i];
    transitions.push_back({{"t_s", tr.t},
                           {"from", tr.from},
                           {"to", tr.to},
                           {"bar_range_m", i < log.transition_ranges.size() ? log.transition_ranges[i] : 0.0}});
  }
  json j = {{"kind", "episode"},
            {"seed", log.seed},
            {"terminal", to_string(log.terminal)},
            {"terminal_reason", log.terminal_reason},
            {"end_time_s", log.end_time},
            {"landed", log.landed()},
            {"inside_box", log.inside_box},
            {"touchdown_x_m", log.touchdown_x},
            {"touchdown_y_m", log.touchdown_y},
            {"touchdown_roll_deg", log.touchdown_roll_deg},
            {"touchdown_pitch_deg", log.touchdown_pitch_deg},
            {"corner_attempts", log.corner_attempts},
            {"corner_successes", log.corner_successes},
            {"ml_detections", log.ml_detections},
            {"ticks", log.ticks.size()},
            {"transitions", transitions}};
  return j.dump(2);
}

std::string monte_carlo_summary_json(const MonteCarloSummary& s) {
  json outcomes = json::array();
  for (const EpisodeOutcome& o : s.outcomes) outcomes.push_back(outcome_json(o));
  json j = {{"kind", "montecarlo"},
            {"episodes", s.episodes},
            {"landed", s.landed},
            {"inside_box", s.inside_box},
            {"aborted", s.aborted},
            {"timed_out", s.timed_out},
            {"success_rate", s.success_rate},
            {"mean_abs_x_m", s.mean_abs_x},
            {"mean_abs_y_m", s.mean_abs_y},
            {"max_abs_x_m", s.max_abs_x},
            {"max_abs_y_m", s.max_abs_y},
            {"radial_p50_m", s.radial_p50},
            {"radial_p95_m", s.radial_p95},
            {"mean_time_to_land_s", s.mean_time_to_land},
            {"touchdown_roll_range_deg", {s.roll_min_deg, s.roll_max_deg}},
            {"touchdown_pitch_range_deg", {s.pitch_min_deg, s.pitch_max_deg}},
            {"outcomes", outcomes}};
  return j.dump(2);
}

std::string trajectory_svg(const std::vector<TickRecord>& ticks) {
  if (ticks.empty()) throw Error(ErrorCode::ConfigInvalid, "no ticks to plot");
  Svg svg(1000, 460);
  const Series vehicle{"vehicle", "#1f77b4", {}, {}};
  Series veh = vehicle, ship{"ship", "#d62728", {}, {}};
  for (const TickRecord& r : ticks) {
    veh.x.push_back(r.position.x());
    veh.y.push_back(r.position.y());
    ship.x.push_back(r.ship_x);
    ship.y.push_back(r.ship_y);
  }
  const std::vector<Series> top = {veh, ship};
  auto [xr, yr] = equal_aspect(range_of(top, true), range_of(top, false), 420, 380);
  const auto m = svg.axes(60, 30, 420, 380, xr, yr, "Top view (world)", "x [m]", "y [m]");
  for (const Series& s : top) svg.polyline(m, s);
  svg.legend(m, top);
  svg.marker(m, veh.x.front(), veh.y.front(), "#1f77b4");
  svg.marker(m, ship.x.back(), ship.y.back(), "#d62728");

  Series side{"vehicle", "#1f77b4", {}, {}};
  for (const TickRecord& r : ticks) {
    side.x.push_back(r.true_forward_m);
    side.y.push_back(r.true_height_m);
  }
  Series deck{"pad", "#2ca02c", {-0.61, 0.61}, {0.0, 0.0}};
  const std::vector<Series> rel = {side, deck};
  const auto mr =
      svg.panel(560, 30, 400, 380, rel, "Relative to pad (ship axes)", "forward of pad [m]", "height above deck [m]");
  svg.marker(mr, 0.0, 0.0, "#2ca02c");
  return svg.finish();
}

std::string time_history_svg(const std::vector<TickRecord>& ticks) {
  if (ticks.empty()) throw Error(ErrorCode::ConfigInvalid, "no ticks to plot");
  Svg svg(1000, 1120);
  const double x = 70, w = 880, h = 165, gap = 52;
  double y = 30;
  auto next = [&] {
    const double cur = y;
    y += h + gap;
    return cur;
  };
  Series mode = series_of(ticks, "mode", "#333", [](const TickRecord& r) { return double(r.mode); });
  mode.step = true;
  svg.panel(x, next(), w, h, {mode}, "Flight mode", "t [s]", "mode", Range{0.5, 5.5});
  svg.panel(x, next(), w, h,
            {series_of(ticks, "forward", "#1f77b4", [](const TickRecord& r) { return r.true_forward_m; }),
             series_of(ticks, "left", "#ff7f0e", [](const TickRecord& r) { return r.true_left_m; }),
             series_of(ticks, "height", "#2ca02c", [](const TickRecord& r) { return r.true_height_m; })},
            "Offset from pad (truth)", "t [s]", "m");
  svg.panel(x, next(), w, h,
            {series_of(ticks, "true", "#333", [](const TickRecord& r) { return r.true_rel_yaw_deg; }),
             series_of(
                 ticks, "raw est", "#aaa", [](const TickRecord& r) { return r.est_yaw_raw_deg; }, true),
             series_of(
                 ticks, "filtered", "#d62728", [](const TickRecord& r) { return r.est_yaw_deg; }, true)},
            "Relative yaw", "t [s]", "deg");
  svg.panel(x, next(), w, h,
            {series_of(ticks, "pitch", "#1f77b4", [](const TickRecord& r) { return r.cmd.pitch; }),
             series_of(ticks, "roll", "#ff7f0e", [](const TickRecord& r) { return r.cmd.roll; }),
             series_of(ticks, "heave", "#2ca02c", [](const TickRecord& r) { return r.cmd.heave; }),
             series_of(ticks, "yaw", "#9467bd", [](const TickRecord& r) { return r.cmd.yaw; })},
            "Commands", "t [s]", "%", Range{-105, 105});
  svg.panel(x, next(), w, h,
            {series_of(ticks, "roll", "#1f77b4", [](const TickRecord& r) { return r.deck_roll_deg; }),
             series_of(ticks, "pitch", "#ff7f0e", [](const TickRecord& r) { return r.deck_pitch_deg; })},
            "Deck motion", "t [s]", "deg");
  return svg.finish();
}

std::string landing_scatter_svg(const std::vector<EpisodeOutcome>& outcomes, double half_box_m, double deck_size_m) {
  std::vector<const EpisodeOutcome*> pts;
  for (const EpisodeOutcome& o : outcomes)
    if (o.terminal == TerminalEvent::Landed) pts.push_back(&o);
  if (outcomes.empty()) throw Error(ErrorCode::ConfigInvalid, "no outcomes to plot");
  Svg svg(560, 560);
  const double half = deck_size_m / 2.0;
  const Range r{-half * 1.1, half * 1.1};
  // Deck x points forward and is drawn up the page; deck y (port) to the left.
  const auto m = svg.axes(70, 40, 440, 440, r, r, "Touchdown points on deck", "starboard <- y [m] -> port (mirrored)",
                          "forward x [m]");
  auto rect = [&](double hw, const char* stroke, const char* fill) {
    svg.raw() << "<rect x=\"" << m.X(-hw) << "\" y=\"" << m.Y(hw) << "\" width=\"" << m.X(hw) - m.X(-hw)
              << "\" height=\"" << m.Y(-hw) - m.Y(hw) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
              << "\" stroke-width=\"2\"/>\n";
  };
  rect(half, "#555", "#f3f3f3");
  rect(half_box_m, "#2ca02c", "none");
  int inside = 0;
  for (const EpisodeOutcome* o : pts) {
    inside += o->inside_box;
    svg.raw() << "<circle cx=\"" << m.X(-o->touchdown_y) << "\" cy=\"" << m.Y(o->touchdown_x)
              << "\" r=\"3.5\" fill=\"" << (o->inside_box ? "#1f77b4" : "#d62728") << "\" fill-opacity=\"0.8\"/>\n";
  }
  svg.raw() << "<text x=\"75\" y=\"56\">deck " << fmt(deck_size_m) << " m, box +/-" << fmt(half_box_m) << " m: "
            << inside << "/" << outcomes.size() << " inside</text>\n";
  return svg.finish();
}

void write_episode_report(const EpisodeLog& log, const EpisodeConfig& cfg, const std::string& dir) {
  ensure_dir(dir);
  write_ticks_csv(log.ticks, join(dir, "ticks.csv"));
  write_file(join(dir, "summary.json"), with_config(episode_summary_json(log), cfg));
  if (log.ticks.empty()) return;
  write_file(join(dir, "trajectory.svg"), trajectory_svg(log.ticks));
  write_file(join(dir, "time_history.svg"), time_history_svg(log.ticks));
  write_file(join(dir, "landing_scatter.svg"),
             landing_scatter_svg({outcome_of(log)}, cfg.sim.landing_half_width_m, cfg.ship.deck_size_m));
}

void emit_report(const std::vector<EpisodeLog>& logs, const EpisodeConfig& cfg, const std::string& dir) {
  if (logs.empty()) throw Error(ErrorCode::ConfigInvalid, "no episode logs to report");
  if (logs.size() == 1) {
    write_episode_report(logs.front(), cfg, dir);
    return;
  }
  std::vector<EpisodeOutcome> outcomes;
  for (const EpisodeLog& log : logs) outcomes.push_back(outcome_of(log));
  write_monte_carlo_report(summarize(outcomes), cfg, dir);
  for (const EpisodeLog& log : logs) write_ticks_csv(log.ticks, join(dir, "ticks_" + std::to_string(log.seed) + ".csv"));
}

void write_monte_carlo_report(const MonteCarloSummary& summary, const EpisodeConfig& cfg, const std::string& dir) {
  ensure_dir(dir);
  write_file(join(dir, "summary.json"), with_config(monte_carlo_summary_json(summary), cfg));
  std::ostringstream csv;
  csv << "seed,terminal,inside_box,end_time_s,touchdown_x_m,touchdown_y_m,touchdown_roll_deg,touchdown_pitch_deg\n";
  for (const EpisodeOutcome& o : summary.outcomes)
    csv << o.seed << ',' << to_string(o.terminal) << ',' << o.inside_box << ',' << fmt(o.end_time) << ','
        << fmt(o.touchdown_x) << ',' << fmt(o.touchdown_y) << ',' << fmt(o.touchdown_roll_deg) << ','
        << fmt(o.touchdown_pitch_deg) << '\n';
  write_file(join(dir, "outcomes.csv"), csv.str());
  if (!summary.outcomes.empty())
    write_file(join(dir, "landing_scatter.svg"),
               landing_scatter_svg(summary.outcomes, cfg.sim.landing_half_width_m, cfg.ship.deck_size_m));
}

std::string regenerate_report(const std::string& dir) {
  json summary;
  try {
    summary = json::parse(read_file(join(dir, "summary.json")));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, dir + "/summary.json: " + e.what());
  }
  EpisodeConfig cfg;
  if (summary.contains("config")) cfg = parse_config(summary["config"].dump());

  std::ostringstream text;
  const std::string kind = summary.value("kind", "");
  if (kind == "episode") {
    const auto ticks = read_ticks_csv(join(dir, "ticks.csv"));
    if (!ticks.empty()) {
      write_file(join(dir, "trajectory.svg"), trajectory_svg(ticks));
      write_file(join(dir, "time_history.svg"), time_history_svg(ticks));
    }
    EpisodeOutcome o;
    o.seed = summary.at("seed").get<std::uint64_t>();
    o.terminal = terminal_from(summary.at("terminal").get<std::string>());
    o.inside_box = summary.at("inside_box").get<bool>();
    o.touchdown_x = summary.at("touchdown_x_m").get<double>();
    o.touchdown_y = summary.at("touchdown_y_m").get<double>();
    write_file(join(dir, "landing_scatter.svg"),
               landing_scatter_svg({o}, cfg.sim.landing_half_width_m, cfg.ship.deck_size_m));
    text << "episode seed " << o.seed << ": " << to_string(o.terminal) << " ("
         << summary.value("terminal_reason", "") << ") at t=" << fmt(summary.at("end_time_s").get<double>())
         << " s\n";
    if (o.terminal == TerminalEvent::Landed)
      text << "touchdown x=" << fmt(o.touchdown_x) << " m y=" << fmt(o.touchdown_y) << " m, "
           << (o.inside_box ? "inside" : "outside") << " the box\n";
    for (const auto& tr : summary.at("transitions"))
      text << "  t=" << fmt(tr.at("t_s").get<double>()) << " s  mode " << tr.at("from").get<int>() << " -> "
           << tr.at("to").get<int>() << "  range " << fmt(tr.at("bar_range_m").get<double>()) << " m\n";
    text << "ticks: " << ticks.size() << '\n';
  } else if (kind == "montecarlo") {
    std::vector<EpisodeOutcome> outcomes;
    for (const auto& o : summary.at("outcomes")) outcomes.push_back(outcome_from(o));
    if (!outcomes.empty())
      write_file(join(dir, "landing_scatter.svg"),
                 landing_scatter_svg(outcomes, cfg.sim.landing_half_width_m, cfg.ship.deck_size_m));
    const MonteCarloSummary s = summarize(outcomes);
    text << "episodes " << s.episodes << ", landed " << s.landed << ", inside box " << s.inside_box
         << ", aborted " << s.aborted << ", timed out " << s.timed_out << '\n'
         << "success rate " << fmt(100.0 * s.success_rate) << " %\n"
         << "mean |x| " << fmt(s.mean_abs_x) << " m, mean |y| " << fmt(s.mean_abs_y) << " m, p95 radial "
         << fmt(s.radial_p95) << " m\n"
         << "touchdown roll [" << fmt(s.roll_min_deg) << ", " << fmt(s.roll_max_deg) << "] deg, pitch ["
         << fmt(s.pitch_min_deg) << ", " << fmt(s.pitch_max_deg) << "] deg\n";
  } else {
    throw Error(ErrorCode::ConfigInvalid, dir + "/summary.json: unknown kind '" + kind + "'");
  }
  return text.str();
}

}  // namespace shipland
