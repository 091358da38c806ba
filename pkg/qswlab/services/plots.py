"""SVG plots of experiment outputs, drawn with reportlab graphics."""
from typing import Sequence

from reportlab.graphics import renderSVG
from reportlab.graphics.charts.barcharts import VerticalBarChart
from reportlab.graphics.charts.legends import Legend
from reportlab.graphics.charts.lineplots import LinePlot
from reportlab.graphics.widgets.markers import makeMarker
from reportlab.graphics.shapes import Drawing, Group, String
from reportlab.lib import colors

from ..schemas import HistogramBin, ObservanceMetrics

WIDTH = 480
HEIGHT = 320
SERIES_COLORS = (colors.darkblue, colors.firebrick, colors.darkgreen, colors.darkorange)


def _canvas(title: str) -> Drawing:
    d = Drawing(WIDTH, HEIGHT)
    d.add(String(WIDTH / 2, HEIGHT - 20, title, fontName="Helvetica-Bold", fontSize=12, textAnchor="middle"))
    return d


def _axis_label(d: Drawing, text: str, x: float, y: float, angle: int = 0) -> None:
    label = String(x, y, text, fontName="Helvetica", fontSize=9, textAnchor="middle")
    if angle:
        g = Group(label)
        g.rotate(angle)
        d.add(g)
    else:
        d.add(label)


def _pad_axis(axis, values: Sequence[float]) -> None:
    lo, hi = min(values), max(values)
    if hi - lo < 1e-12:
        axis.valueMin, axis.valueMax = lo - 0.5, hi + 0.5


def line_plot_svg(
    title: str,
    series: dict[str, Sequence[tuple[float, float]]],
    x_label: str,
    y_label: str,
) -> str:
    d = _canvas(title)
    plot = LinePlot()
    plot.x, plot.y = 60, 50
    plot.width, plot.height = WIDTH - 160, HEIGHT - 100
    names = [name for name, points in series.items() if points]
    plot.data = [list(series[name]) for name in names] or [[(0.0, 0.0)]]
    for i in range(len(plot.data)):
        plot.lines[i].strokeColor = SERIES_COLORS[i % len(SERIES_COLORS)]
        plot.lines[i].symbol = makeMarker("FilledCircle", size=3)
    _pad_axis(plot.xValueAxis, [x for line in plot.data for x, _ in line])
    _pad_axis(plot.yValueAxis, [y for line in plot.data for _, y in line])
    plot.xValueAxis.labelTextFormat = "%.2f"
    plot.yValueAxis.labelTextFormat = "%.3g"
    d.add(plot)

    if names:
        legend = Legend()
        legend.x, legend.y = WIDTH - 90, HEIGHT - 50
        legend.fontSize = 8
        legend.colorNamePairs = [
            (SERIES_COLORS[i % len(SERIES_COLORS)], name) for i, name in enumerate(names)
        ]
        d.add(legend)
    _axis_label(d, x_label, plot.x + plot.width / 2, 18)
    _axis_label(d, y_label, plot.y + plot.height / 2, -20, angle=90)
    return renderSVG.drawToString(d)


def threshold_plot_svg(points: Sequence[tuple[int, float | None]]) -> str:
    """omega_t against graph size; sizes without a threshold are left out."""
    data = [(float(n), float(w)) for n, w in points if w is not None]
    return line_plot_svg("Relaxation threshold", {"omega_t": data}, "n", "omega_t")


def observance_plot_svg(rows: Sequence[ObservanceMetrics]) -> str:
    by_omega = sorted(rows, key=lambda r: r.omega)
    return line_plot_svg(
        "Digraph observance",
        {
            "p_S": [(r.omega, r.p_sink) for r in by_omega],
            "mu_S": [(r.omega, r.mu_sink) for r in by_omega],
        },
        "omega",
        "value",
    )


def histogram_svg(bins: Sequence[HistogramBin], title: str = "omega_0 histogram") -> str:
    d = _canvas(title)
    chart = VerticalBarChart()
    chart.x, chart.y = 60, 50
    chart.width, chart.height = WIDTH - 100, HEIGHT - 100
    chart.data = [[b.count for b in bins]]
    chart.categoryAxis.categoryNames = [f"{b.lower:.1f}" for b in bins]
    chart.categoryAxis.labels.fontSize = 7
    chart.valueAxis.valueMin = 0
    chart.valueAxis.valueMax = max([b.count for b in bins] + [1])
    chart.bars[0].fillColor = SERIES_COLORS[0]
    d.add(chart)
    _axis_label(d, "omega_0 (bin lower edge)", chart.x + chart.width / 2, 18)
    return renderSVG.drawToString(d)
