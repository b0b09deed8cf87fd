// Deterministic, dependency-free SVG emitters for the CLI: trajectory step
// plots and stability-scan heatmaps. Output is plain text with fixed number
// formatting so identical inputs produce byte-identical files.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <asynlin/simulate.hpp>

namespace asynlin::svg {

inline std::string fmt(double v, int prec = 2) {
  if (v == 0.0) v = 0.0;  // collapse -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

inline std::string fmt_g(double v, int prec = 6) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

namespace detail {

struct Series {
  std::vector<double> t;
  std::vector<double> v;
};

// Piecewise-constant (sample-and-hold) path: M x0 y0 H x1 V y1 H x2 V y2 ...
// extended by a final hold segment to t_end.
inline std::string step_path(const Series& s, double t_end,
                             double (*px)(double, const double*),
                             double (*py)(double, const double*),
                             const double* geom) {
  std::string d;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    const std::string x = fmt(px(s.t[i], geom));
    const std::string y = fmt(py(s.v[i], geom));
    if (i == 0) {
      d += "M" + x + " " + y;
    } else {
      d += " H" + x + " V" + y;
    }
  }
  if (!s.t.empty() && s.t.back() < t_end) d += " H" + fmt(px(t_end, geom));
  return d;
}

// geom layout: [0]=ml, [1]=plot_w, [2]=t_end, [3]=top, [4]=plot_h, [5]=vmin, [6]=vmax
inline double map_x(double t, const double* g) {
  return g[0] + (g[2] > 0 ? t / g[2] : 0.0) * g[1];
}
inline double map_y(double v, const double* g) {
  const double span = g[6] - g[5];
  return g[3] + (1.0 - (v - g[5]) / span) * g[4];
}

}  // namespace detail

// Step plot of a simulated trajectory. Each state is drawn as the value it
// holds between its own update instants; absent samples (grid points not on
// the state's time scale) simply extend the previous hold segment.
inline std::string trajectory_svg(const Trajectory& tr) {
  constexpr double W = 800, H = 420;
  constexpr double ml = 62, mr = 16, top = 26, bottom = 42;
  const double plot_w = W - ml - mr;
  const double plot_h = H - top - bottom;

  detail::Series sx, sy;
  for (const auto& s : tr.samples) {
    const double t = s.t.to_double();
    if (s.x) {
      sx.t.push_back(t);
      sx.v.push_back(s.x->to_double());
    }
    if (s.y) {
      sy.t.push_back(t);
      sy.v.push_back(s.y->to_double());
    }
  }

  double vmin = 0.0, vmax = 0.0;
  bool first = true;
  for (const auto* s : {&sx, &sy}) {
    for (double v : s->v) {
      vmin = first ? v : std::min(vmin, v);
      vmax = first ? v : std::max(vmax, v);
      first = false;
    }
  }
  if (first) {
    vmin = -1;
    vmax = 1;
  }
  double pad = 0.05 * (vmax - vmin);
  if (pad == 0.0) pad = std::max(1.0, std::abs(vmax));
  vmin -= pad;
  vmax += pad;

  const double t_end = tr.horizon.to_double();
  const double geom[7] = {ml, plot_w, t_end, top, plot_h, vmin, vmax};

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W, 0) +
         "\" height=\"" + fmt(H, 0) + "\" viewBox=\"0 0 " + fmt(W, 0) + " " +
         fmt(H, 0) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fmt(W, 0) + "\" height=\"" +
         fmt(H, 0) + "\" fill=\"#ffffff\"/>\n";

  // Horizontal gridlines + y tick labels.
  constexpr int n_ticks = 5;
  for (int i = 0; i < n_ticks; ++i) {
    const double v = vmin + (vmax - vmin) * i / (n_ticks - 1);
    const double y = detail::map_y(v, geom);
    out += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
           fmt(ml + plot_w) + "\" y2=\"" + fmt(y) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + fmt(ml - 6) + "\" y=\"" + fmt(y + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444444\" "
           "text-anchor=\"end\">" +
           fmt_g(v, 4) + "</text>\n";
  }
  // Vertical gridlines + t tick labels.
  for (int i = 0; i < n_ticks; ++i) {
    const double t = t_end * i / (n_ticks - 1);
    const double x = detail::map_x(t, geom);
    out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(top) + "\" x2=\"" +
           fmt(x) + "\" y2=\"" + fmt(top + plot_h) +
           "\" stroke=\"#eeeeee\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(top + plot_h + 16) +
           "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444444\" "
           "text-anchor=\"middle\">" +
           fmt_g(t, 4) + "</text>\n";
  }
  // Zero line if in range.
  if (vmin < 0.0 && vmax > 0.0) {
    const double y0 = detail::map_y(0.0, geom);
    out += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(y0) + "\" x2=\"" +
           fmt(ml + plot_w) + "\" y2=\"" + fmt(y0) +
           "\" stroke=\"#999999\" stroke-width=\"1\" "
           "stroke-dasharray=\"4 3\"/>\n";
  }
  // Frame.
  out += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(top) + "\" width=\"" +
         fmt(plot_w) + "\" height=\"" + fmt(plot_h) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  const char* cx = "#1f77b4";
  const char* cy = "#d62728";
  for (const auto& [series, color] :
       {std::pair{&sx, cx}, std::pair{&sy, cy}}) {
    if (series->t.empty()) continue;
    out += "<path d=\"" +
           detail::step_path(*series, t_end, detail::map_x, detail::map_y,
                             geom) +
           "\" fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\"/>\n";
    for (std::size_t i = 0; i < series->t.size(); ++i) {
      out += "<circle cx=\"" + fmt(detail::map_x(series->t[i], geom)) +
             "\" cy=\"" + fmt(detail::map_y(series->v[i], geom)) +
             "\" r=\"2.5\" fill=\"" + std::string(color) + "\"/>\n";
    }
  }

  // Title and legend.
  out += "<text x=\"" + fmt(ml) + "\" y=\"16\" font-family=\"sans-serif\" "
         "font-size=\"13\" fill=\"#111111\">trajectory  mu=" +
         tr.spec.mu.str() + "  nu=" + tr.spec.nu.str() + "</text>\n";
  const double lx = ml + plot_w - 150;
  out += "<rect x=\"" + fmt(lx) + "\" y=\"" + fmt(top + 8) +
         "\" width=\"12\" height=\"12\" fill=\"" + std::string(cx) + "\"/>\n";
  out += "<text x=\"" + fmt(lx + 18) + "\" y=\"" + fmt(top + 18) +
         "\" font-family=\"sans-serif\" font-size=\"12\" "
         "fill=\"#111111\">x (step " +
         tr.spec.mu.str() + ")</text>\n";
  out += "<rect x=\"" + fmt(lx) + "\" y=\"" + fmt(top + 26) +
         "\" width=\"12\" height=\"12\" fill=\"" + std::string(cy) + "\"/>\n";
  out += "<text x=\"" + fmt(lx + 18) + "\" y=\"" + fmt(top + 36) +
         "\" font-family=\"sans-serif\" font-size=\"12\" "
         "fill=\"#111111\">y (step " +
         tr.spec.nu.str() + ")</text>\n";
  out += "</svg>\n";
  return out;
}

// One heatmap cell: spectral radius plus the integer verdict
// (0 = stable, 1 = marginal, 2 = unstable).
struct ScanCellView {
  double rho = 0.0;
  int verdict = 0;
};

struct ScanView {
  std::string xlabel, ylabel, title;
  std::vector<std::string> xticks, yticks;  // one label per cell index
  std::vector<ScanCellView> cells;          // row-major: [ix * ny + iy]
  std::size_t nx = 0, ny = 0;
};

namespace detail {

// White at rho = 1, saturating blue for strongly stable cells and saturating
// red for strongly unstable ones; the scale is log10(rho) clamped to [-1, 1].
inline std::string cell_color(double rho) {
  double s = (rho > 0.0) ? std::log10(rho) : -1.0;
  s = std::clamp(s, -1.0, 1.0);
  const double a = std::abs(s);
  int r, g, b;
  if (s <= 0.0) {  // white -> #2166ac
    r = static_cast<int>(std::lround(255 + (33 - 255) * a));
    g = static_cast<int>(std::lround(255 + (102 - 255) * a));
    b = static_cast<int>(std::lround(255 + (172 - 255) * a));
  } else {  // white -> #b2182b
    r = static_cast<int>(std::lround(255 + (178 - 255) * a));
    g = static_cast<int>(std::lround(255 + (24 - 255) * a));
    b = static_cast<int>(std::lround(255 + (43 - 255) * a));
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace detail

// Heatmap of spectral radii over a two-parameter sweep. The first swept
// parameter runs along the horizontal axis, the second along the vertical
// axis (increasing upward).
inline std::string scan_svg(const ScanView& sv) {
  constexpr double W = 720, H = 560;
  constexpr double ml = 96, mr = 116, top = 40, bottom = 64;
  const double plot_w = W - ml - mr;
  const double plot_h = H - top - bottom;
  const double cw = plot_w / static_cast<double>(sv.nx);
  const double ch = plot_h / static_cast<double>(sv.ny);

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W, 0) +
         "\" height=\"" + fmt(H, 0) + "\" viewBox=\"0 0 " + fmt(W, 0) + " " +
         fmt(H, 0) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fmt(W, 0) + "\" height=\"" +
         fmt(H, 0) + "\" fill=\"#ffffff\"/>\n";
  out += "<text x=\"" + fmt(ml) + "\" y=\"22\" font-family=\"sans-serif\" "
         "font-size=\"14\" fill=\"#111111\">" +
         sv.title + "</text>\n";

  for (std::size_t ix = 0; ix < sv.nx; ++ix) {
    for (std::size_t iy = 0; iy < sv.ny; ++iy) {
      const auto& c = sv.cells[ix * sv.ny + iy];
      const double x = ml + cw * static_cast<double>(ix);
      const double y = top + plot_h - ch * static_cast<double>(iy + 1);
      out += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" +
             fmt(cw) + "\" height=\"" + fmt(ch) + "\" fill=\"" +
             detail::cell_color(c.rho) + "\"><title>" + sv.xlabel + "=" +
             sv.xticks[ix] + " " + sv.ylabel + "=" + sv.yticks[iy] +
             " rho=" + fmt_g(c.rho, 6) + "</title></rect>\n";
      if (c.verdict == 1) {  // outline marginal cells
        out += "<rect x=\"" + fmt(x + 1) + "\" y=\"" + fmt(y + 1) +
               "\" width=\"" + fmt(cw - 2) + "\" height=\"" + fmt(ch - 2) +
               "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1\" "
               "stroke-dasharray=\"3 2\"/>\n";
      }
    }
  }
  out += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(top) + "\" width=\"" +
         fmt(plot_w) + "\" height=\"" + fmt(plot_h) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  // Axis tick labels: first, middle, last cell (centered on the cell).
  auto tick_indices = [](std::size_t n) {
    std::vector<std::size_t> idx{0};
    if (n > 2) idx.push_back(n / 2);
    if (n > 1) idx.push_back(n - 1);
    return idx;
  };
  for (std::size_t ix : tick_indices(sv.nx)) {
    const double x = ml + cw * (static_cast<double>(ix) + 0.5);
    out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(top + plot_h + 18) +
           "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444444\" "
           "text-anchor=\"middle\">" +
           sv.xticks[ix] + "</text>\n";
  }
  for (std::size_t iy : tick_indices(sv.ny)) {
    const double y = top + plot_h - ch * (static_cast<double>(iy) + 0.5);
    out += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(y + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444444\" "
           "text-anchor=\"end\">" +
           sv.yticks[iy] + "</text>\n";
  }
  out += "<text x=\"" + fmt(ml + plot_w / 2) + "\" y=\"" +
         fmt(top + plot_h + 40) +
         "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#111111\" "
         "text-anchor=\"middle\">" +
         sv.xlabel + "</text>\n";
  out += "<text x=\"22\" y=\"" + fmt(top + plot_h / 2) +
         "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#111111\" "
         "text-anchor=\"middle\" transform=\"rotate(-90 22 " +
         fmt(top + plot_h / 2) + ")\">" +
         sv.ylabel + "</text>\n";

  // Color-scale legend: log10(rho) from +1 (top) to -1 (bottom).
  const double lx = ml + plot_w + 24;
  constexpr int strips = 40;
  const double sh = plot_h / strips;
  for (int i = 0; i < strips; ++i) {
    const double s = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / strips;
    out += "<rect x=\"" + fmt(lx) + "\" y=\"" + fmt(top + sh * i) +
           "\" width=\"16\" height=\"" + fmt(sh + 0.5) + "\" fill=\"" +
           detail::cell_color(std::pow(10.0, s)) + "\"/>\n";
  }
  out += "<rect x=\"" + fmt(lx) + "\" y=\"" + fmt(top) +
         "\" width=\"16\" height=\"" + fmt(plot_h) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  const struct {
    double frac;
    const char* label;
  } marks[] = {{0.0, "rho=10 (unstable)"},
               {0.5, "rho=1"},
               {1.0, "rho=0.1 (stable)"}};
  for (const auto& m : marks) {
    out += "<text x=\"" + fmt(lx + 22) + "\" y=\"" +
           fmt(top + plot_h * m.frac + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" "
           "fill=\"#444444\">" +
           m.label + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace asynlin::svg
