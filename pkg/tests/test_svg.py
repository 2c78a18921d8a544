"""Unit tests for the dependency-free SVG chart renderer."""

import xml.etree.ElementTree as ET

import numpy as np
import pytest

from agekit.errors import DomainError
from agekit.svg import Panel, Series, format_tick, nice_ticks, render_chart

SVG_NS = "{http://www.w3.org/2000/svg}"


def sample_chart():
    x = np.linspace(0.0, 4000.0, 60)
    panels = (
        Panel(
            title="bandwidth <per client> & load",
            x_label="tick",
            y_label="kbyte/s",
            series=(
                Series("observed", x, 120.0 - 0.02 * x),
                Series("fitted", x, 118.0 - 0.02 * x, dashed=True),
            ),
            vline=3000.0,
            vline_label="rejuvenation",
        ),
        Panel(
            title="disk queue",
            x_label="tick",
            y_label="requests",
            series=(Series("queue", x, 0.001 * x**1.3),),
        ),
    )
    return render_chart(panels)


class TestNiceTicks:
    def test_thousands_ladder(self):
        assert nice_ticks(0.0, 4000.0) == [0.0, 1000.0, 2000.0, 3000.0, 4000.0]

    def test_twenty_step(self):
        assert nice_ticks(17.0, 113.0) == [20.0, 40.0, 60.0, 80.0, 100.0]

    def test_degenerate_span_pads(self):
        assert nice_ticks(5.0, 5.0) == [4.0, 4.5, 5.0, 5.5, 6.0]

    def test_reversed_bounds(self):
        assert nice_ticks(10.0, 0.0) == nice_ticks(0.0, 10.0)

    def test_zero_tick_snaps_clean(self):
        # crossing zero must produce 0.0 exactly, not residue like 5.6e-17
        ticks = nice_ticks(-0.3, 0.3)
        assert 0.0 in ticks
        assert all(abs(t) >= 0.1 or t == 0.0 for t in ticks)

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError, match="tick range must be finite"):
            nice_ticks(0.0, float("inf"))

    def test_format_tick(self):
        assert format_tick(-0.0) == "0"
        assert format_tick(1000.0) == "1000"
        assert format_tick(0.123456789) == "0.123457"


class TestValidation:
    def test_series_shape_mismatch(self):
        with pytest.raises(DomainError, match="1-D and equally long"):
            Series("a", np.arange(3.0), np.arange(4.0))
        with pytest.raises(DomainError, match="1-D and equally long"):
            Series("a", np.zeros((2, 2)), np.zeros(4))

    def test_series_empty(self):
        with pytest.raises(DomainError, match="must not be empty"):
            Series("a", np.array([]), np.array([]))

    def test_series_non_finite(self):
        with pytest.raises(DomainError, match="must be finite"):
            Series("a", np.arange(3.0), np.array([1.0, np.nan, 2.0]))

    def test_panel_needs_series(self):
        with pytest.raises(DomainError, match="at least one series"):
            Panel(title="t", x_label="x", y_label="y", series=())

    def test_chart_needs_panels(self):
        with pytest.raises(DomainError, match="at least one panel"):
            render_chart(())


class TestRenderChart:
    def test_well_formed_xml_with_namespace(self):
        root = ET.fromstring(sample_chart())
        assert root.tag == f"{SVG_NS}svg"

    def test_dimensions_stack_panels(self):
        root = ET.fromstring(sample_chart())
        assert root.get("width") == "760"
        assert root.get("height") == "460"
        assert root.get("viewBox") == "0 0 760 460"

    def test_one_polyline_per_series(self):
        root = ET.fromstring(sample_chart())
        polylines = root.findall(f".//{SVG_NS}polyline")
        assert len(polylines) == 3
        dashed = [p for p in polylines if p.get("stroke-dasharray")]
        assert len(dashed) == 1

    def test_vline_marker_and_label(self):
        root = ET.fromstring(sample_chart())
        # vertical red dashed rule; legend swatches are horizontal
        red_dashed = [
            el
            for el in root.findall(f".//{SVG_NS}line")
            if el.get("stroke") == "#d62728"
            and el.get("stroke-dasharray")
            and el.get("x1") == el.get("x2")
        ]
        assert len(red_dashed) == 1
        labels = [el.text for el in root.findall(f".//{SVG_NS}text")]
        assert "rejuvenation" in labels

    def test_numeric_tick_labels_on_both_axes(self):
        root = ET.fromstring(sample_chart())
        numeric = []
        for el in root.findall(f".//{SVG_NS}text"):
            try:
                numeric.append(float(el.text))
            except (TypeError, ValueError):
                continue
        # two panels, each with x and y tick labels
        assert len(numeric) >= 16
        assert 0.0 in numeric and 4000.0 in numeric

    def test_special_characters_escaped(self):
        text = sample_chart()
        assert "bandwidth <per client>" not in text
        assert "bandwidth &lt;per client&gt; &amp; load" in text
        # parses back to the original title
        root = ET.fromstring(text)
        titles = [el.text for el in root.findall(f".//{SVG_NS}text")]
        assert "bandwidth <per client> & load" in titles

    def test_render_is_deterministic(self):
        assert sample_chart() == sample_chart()

    def test_flat_series_still_renders(self):
        # constant data must not divide by a zero span
        panel = Panel(
            title="flat",
            x_label="x",
            y_label="y",
            series=(Series("c", np.array([5.0]), np.array([2.0])),),
        )
        root = ET.fromstring(render_chart((panel,), width=400, panel_height=200))
        assert root.get("height") == "200"
        assert root.findall(f".//{SVG_NS}polyline")
