//! SVG plot of a spectrum inside the disc `D(1, 1)`.

use std::fmt::Write as _;

use crate::linalg::Spectrum;
use crate::report::sig;

const SCALE: f64 = 200.0;
const MARGIN: f64 = 40.0;
const SIZE: f64 = 2.0 * SCALE + 2.0 * MARGIN;

fn to_px(re: f64, im: f64) -> (f64, f64) {
    (MARGIN + re * SCALE, MARGIN + (1.0 - im) * SCALE)
}

/// One marker per eigenvalue cluster; clusters of multiplicity above one are
/// annotated with `xN`.
pub fn spectrum_svg(spec: &Spectrum, title: &str) -> String {
    let mut s = String::new();
    let (cx, cy) = to_px(1.0, 0.0);
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#).unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(s, r#"<title>{}</title>"#, escape(title)).unwrap();
    let (x0, _) = to_px(0.0, 0.0);
    let (x2, _) = to_px(2.0, 0.0);
    let (_, top) = to_px(0.0, 1.0);
    let (_, bottom) = to_px(0.0, -1.0);
    writeln!(s, r##"<line x1="{}" y1="{cy}" x2="{}" y2="{cy}" stroke="#999" stroke-width="1"/>"##, x0 - 20.0, x2 + 20.0).unwrap();
    writeln!(s, r##"<line x1="{cx}" y1="{}" x2="{cx}" y2="{}" stroke="#999" stroke-width="1"/>"##, top - 20.0, bottom + 20.0).unwrap();
    writeln!(s, r##"<circle cx="{cx}" cy="{cy}" r="{SCALE}" fill="none" stroke="#333" stroke-width="1.5"/>"##).unwrap();
    for (label, re) in [("0", 0.0), ("1", 1.0), ("2", 2.0)] {
        let (x, y) = to_px(re, 0.0);
        writeln!(s, r##"<text x="{}" y="{}" font-size="12" fill="#555">{label}</text>"##, x + 3.0, y + 14.0).unwrap();
    }
    writeln!(s, r##"<text x="{MARGIN}" y="20" font-size="14" fill="#000">{}</text>"##, escape(title)).unwrap();
    for c in spec.clusters() {
        let (x, y) = to_px(c.value.re, c.value.im);
        writeln!(
            s,
            r##"<circle class="eigenvalue" cx="{:.3}" cy="{:.3}" r="4" fill="#c0392b" data-re="{}" data-im="{}" data-mult="{}"/>"##,
            x,
            y,
            sig(c.value.re),
            sig(c.value.im),
            c.mult
        )
        .unwrap();
        if c.mult > 1 {
            writeln!(s, r##"<text x="{:.3}" y="{:.3}" font-size="11" fill="#c0392b">x{}</text>"##, x + 6.0, y - 6.0, c.mult).unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::spectral::NbLaplacian;
    use crate::DEFAULT_TOL;

    fn markers(svg: &str) -> Vec<(f64, f64, usize)> {
        svg.lines()
            .filter(|l| l.contains(r#"class="eigenvalue""#))
            .map(|l| {
                let attr = |name: &str| {
                    let start = l.find(&format!("{name}=\"")).unwrap() + name.len() + 2;
                    l[start..].split('"').next().unwrap().to_string()
                };
                (attr("data-re").parse().unwrap(), attr("data-im").parse().unwrap(), attr("data-mult").parse().unwrap())
            })
            .collect()
    }

    fn plot(s: &str) -> String {
        let g = s.parse::<Family>().unwrap().build().unwrap();
        spectrum_svg(&NbLaplacian::new(&g).unwrap().spectrum(DEFAULT_TOL).unwrap(), s)
    }

    #[test]
    fn cycle_four() {
        let m = markers(&plot("cycle:4"));
        let pts: Vec<(f64, f64)> = m.iter().map(|&(a, b, _)| (a, b)).collect();
        assert_eq!(pts, vec![(0.0, 0.0), (1.0, -1.0), (1.0, 1.0), (2.0, 0.0)]);
        assert!(m.iter().all(|&(_, _, k)| k == 2));
    }

    #[test]
    fn complete_four() {
        let m = markers(&plot("complete:4"));
        let r7 = 7f64.sqrt() / 4.0;
        let want = [(0.0, 0.0, 1), (0.5, 0.0, 3), (1.25, -r7, 3), (1.25, r7, 3), (1.5, 0.0, 2)];
        assert_eq!(m.len(), want.len());
        for (a, b) in m.iter().zip(want) {
            assert!((a.0 - b.0).abs() < 1e-10 && (a.1 - b.1).abs() < 1e-10 && a.2 == b.2, "{a:?} {b:?}");
        }
    }

    #[test]
    fn petal_markers_on_two_circles() {
        let svg = plot("petal:2,3");
        assert!(svg.starts_with("<svg"));
        let r = 3f64.powf(-1.0 / 3.0);
        for (re, im, _) in markers(&svg) {
            let d = ((re - 1.0).powi(2) + im * im).sqrt();
            assert!((d - 1.0).abs() < 1e-9 || (d - r).abs() < 1e-9);
        }
        assert_eq!(markers(&svg).iter().map(|m| m.2).sum::<usize>(), 12);
    }

    #[test]
    fn deterministic() {
        assert_eq!(plot("wheel:5"), plot("wheel:5"));
    }
}
