#include "cvqkd/plot.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace cvqkd {

namespace {

constexpr double kWidth = 780.0;
constexpr double kHeight = 560.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 700.0;
constexpr double kTop = 60.0;
constexpr double kBottom = 470.0;

std::string svg_open() {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\">\n<rect width=\"{}\" height=\"{}\" "
      "fill=\"white\"/>\n",
      kWidth, kHeight, kWidth, kHeight, kWidth, kHeight);
}

std::string svg_close(const std::string& hash) {
  return fmt::format(
      "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"end\" "
      "fill=\"#555\">params {}</text>\n</svg>\n",
      kWidth - 10.0, kHeight - 10.0, hash);
}

std::string text(double x, double y, const std::string& s,
                 const std::string& extra = "") {
  return fmt::format(
      "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"14\"{}>{}</text>\n", x, y,
      extra.empty() ? "" : " " + extra, s);
}

std::string axis_labels(const std::string& x_label,
                        const std::string& y_label,
                        const std::string& title) {
  std::string out;
  out += text(0.5 * (kLeft + kRight), kHeight - 25.0, x_label,
              "text-anchor=\"middle\"");
  out += fmt::format(
      "<text x=\"20\" y=\"{:.1f}\" font-size=\"14\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 20 {:.1f})\">{}</text>\n",
      0.5 * (kTop + kBottom), 0.5 * (kTop + kBottom), y_label);
  out += text(0.5 * (kLeft + kRight), 30.0, title, "text-anchor=\"middle\"");
  return out;
}

std::string color_for(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(30 + 225 * t);
  const int g = static_cast<int>(30 + 190 * t);
  const int b = static_cast<int>(120 - 90 * t);
  return fmt::format("#{:02x}{:02x}{:02x}", r, g, b);
}

template <typename Cell, typename Value>
std::string heatmap(const std::vector<Cell>& cells, const std::string& title,
                    const std::string& hash, Value value_of) {
  std::vector<double> ds;
  std::vector<int> ns;
  for (const auto& c : cells) {
    if (ds.empty() || ds.back() != c.distance_km) {
      if (std::find(ds.begin(), ds.end(), c.distance_km) == ds.end()) {
        ds.push_back(c.distance_km);
      }
    }
    if (std::find(ns.begin(), ns.end(), c.n_onus) == ns.end()) {
      ns.push_back(c.n_onus);
    }
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& c : cells) {
    const auto v = value_of(c);
    if (v) {
      lo = std::min(lo, *v);
      hi = std::max(hi, *v);
    }
  }
  const double span = hi > lo ? hi - lo : 1.0;

  std::string out = svg_open();
  const double cw = (kRight - kLeft) / ns.size();
  const double ch = (kBottom - kTop) / ds.size();
  for (const auto& c : cells) {
    const auto di = static_cast<double>(
        std::find(ds.begin(), ds.end(), c.distance_km) - ds.begin());
    const auto ni = static_cast<double>(
        std::find(ns.begin(), ns.end(), c.n_onus) - ns.begin());
    const auto v = value_of(c);
    const std::string fill =
        v ? color_for((*v - lo) / span) : std::string("#bbbbbb");
    out += fmt::format(
        "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
        "fill=\"{}\"/>\n",
        kLeft + ni * cw, kTop + di * ch, cw, ch, fill);
  }
  out += text(kLeft, kBottom + 20.0, fmt::format("{}", ns.front()));
  out += text(kRight - 20.0, kBottom + 20.0, fmt::format("{}", ns.back()));
  out += text(kLeft - 45.0, kTop + 12.0, fmt::format("{:.4g}", ds.front()));
  out += text(kLeft - 45.0, kBottom, fmt::format("{:.4g}", ds.back()));
  out += text(kRight + 5.0, kTop + 12.0, fmt::format("max {:.4g}", hi));
  out += text(kRight + 5.0, kBottom, fmt::format("min {:.4g}", lo));
  out += axis_labels("ONUs [1]", "distance [km]", title);
  out += svg_close(hash);
  return out;
}

}  // namespace

std::string heatmap_svg(const std::vector<GridCell>& cells,
                        const std::string& hash) {
  return heatmap(cells, "clamped key rate [bit/symbol]", hash,
                 [](const GridCell& c) -> std::optional<double> {
                   if (!c.report) return std::nullopt;
                   return c.report->key_rate_clamped;
                 });
}

std::string heatmap_svg(const std::vector<ToleranceCell>& cells,
                        const std::string& hash) {
  return heatmap(cells, "tolerable excess noise [SNU]", hash,
                 [](const ToleranceCell& c) -> std::optional<double> {
                   if (!c.result) return std::nullopt;
                   return c.result->eps_star;
                 });
}

std::string compare_svg(const std::vector<CompareRow>& rows,
                        const std::string& hash) {
  double max_rate = 0.0;
  for (const auto& r : rows) {
    max_rate = std::max({max_rate, r.key_rate_downstream, r.key_rate_ptp});
  }
  if (max_rate <= 0.0) max_rate = 1.0;
  std::string out = svg_open();
  const double group_w = (kRight - kLeft) / rows.size();
  std::string ratio_points;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const CompareRow& r = rows[i];
    const double x0 = kLeft + i * group_w;
    const auto bar = [&](double rate, double offset, const char* fill) {
      const double h =
          std::max(0.0, rate / max_rate) * (kBottom - kTop);
      return fmt::format(
          "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" "
          "height=\"{:.2f}\" fill=\"{}\"/>\n",
          x0 + offset * group_w, kBottom - h, 0.38 * group_w, h, fill);
    };
    out += bar(r.key_rate_ptp, 0.08, "#777777");
    out += bar(r.key_rate_downstream, 0.52, "#5b3a8c");
    if (r.ratio_percent) {
      const double y =
          kBottom - std::clamp(*r.ratio_percent, 0.0, 100.0) / 100.0 *
                        (kBottom - kTop);
      ratio_points +=
          fmt::format("{:.2f},{:.2f} ", x0 + 0.5 * group_w, y);
    }
    out += text(x0 + 0.2 * group_w, kBottom + 20.0,
                fmt::format("{}@{:.4g}", r.n_onus, r.fiber_loss_db));
  }
  if (!ratio_points.empty()) {
    out += fmt::format(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#c490d1\" "
        "stroke-width=\"2\"/>\n",
        ratio_points);
  }
  out += text(kRight + 5.0, kTop + 12.0, "100%");
  out += text(kRight + 5.0, kBottom, "0%");
  out += axis_labels("ONUs [1] at fiber_loss [dB]", "key rate [bit/symbol]",
                     "downstream vs point-to-point (line: ratio [percent])");
  out += svg_close(hash);
  return out;
}

std::string optimize_svg(const std::vector<OptimizeCell>& cells,
                         const std::string& hash) {
  std::map<double, std::vector<const OptimizeCell*>> by_distance;
  double v_lo = std::numeric_limits<double>::infinity();
  double v_hi = -v_lo;
  int n_lo = 0, n_hi = 1;
  bool first = true;
  for (const auto& c : cells) {
    if (!c.result) continue;
    by_distance[c.distance_km].push_back(&c);
    v_lo = std::min(v_lo, c.result->v_mod_star);
    v_hi = std::max(v_hi, c.result->v_mod_star);
    if (first || c.n_onus < n_lo) n_lo = c.n_onus;
    if (first || c.n_onus > n_hi) n_hi = c.n_onus;
    first = false;
  }
  if (!(v_hi > v_lo)) {
    v_lo -= 0.5;
    v_hi += 0.5;
  }
  std::string out = svg_open();
  const char* palette[] = {"#5b3a8c", "#2b7a78", "#b3541e", "#3a5ba0",
                           "#8c3a5b", "#567d46"};
  int color_ix = 0;
  for (const auto& [d, line] : by_distance) {
    std::string points;
    for (const OptimizeCell* c : line) {
      const double x = kLeft + (kRight - kLeft) *
                                   (c->n_onus - n_lo) /
                                   std::max(1, n_hi - n_lo);
      const double y = kBottom - (kBottom - kTop) *
                                     (c->result->v_mod_star - v_lo) /
                                     (v_hi - v_lo);
      points += fmt::format("{:.2f},{:.2f} ", x, y);
    }
    const char* color = palette[color_ix++ % 6];
    out += fmt::format(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" "
        "stroke-width=\"2\"/>\n",
        points, color);
    out += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"12\" fill=\"{}\">d = "
        "{:.4g} km</text>\n",
        kRight + 5.0, kTop + 14.0 * color_ix, color, d);
  }
  out += text(kLeft, kBottom + 20.0, fmt::format("{}", n_lo));
  out += text(kRight - 20.0, kBottom + 20.0, fmt::format("{}", n_hi));
  out += text(kLeft - 45.0, kTop + 12.0, fmt::format("{:.4g}", v_hi));
  out += text(kLeft - 45.0, kBottom, fmt::format("{:.4g}", v_lo));
  out += axis_labels("ONUs [1]", "optimal V_mod [SNU]",
                     "optimal modulation variance");
  out += svg_close(hash);
  return out;
}

}  // namespace cvqkd
