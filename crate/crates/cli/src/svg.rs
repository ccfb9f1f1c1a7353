//! Zero plots as plain SVG.

use std::fmt::Write;

use szego_core::C64;

pub const HALF_WIDTH: f64 = 1.15;
pub const MARKER_RADIUS: f64 = 0.008;
const CROSS: f64 = 0.02;
const PIXELS: u32 = 800;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Plot {
    pub zeros: Vec<C64>,
    /// Radii of dashed circles centred at the origin.
    pub guides: Vec<f64>,
    pub poles: Vec<C64>,
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    // avoid "-0.000000"
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000000".into()
    } else {
        s
    }
}

/// The document for `plot`; plot coordinates are used directly, with `y` flipped.
pub fn render(plot: &Plot) -> String {
    let h = HALF_WIDTH;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{PIXELS}" height="{PIXELS}" viewBox="{} {} {} {}">"#,
        num(-h),
        num(-h),
        num(2.0 * h),
        num(2.0 * h)
    );
    let _ = writeln!(s, r#"<rect x="{}" y="{}" width="{}" height="{}" fill="white"/>"#, num(-h), num(-h), num(2.0 * h), num(2.0 * h));
    let _ = writeln!(s, r#"<circle cx="0.000000" cy="0.000000" r="1.000000" fill="none" stroke="black" stroke-width="0.004"/>"#);
    for r in &plot.guides {
        let _ = writeln!(
            s,
            r#"<circle cx="0.000000" cy="0.000000" r="{}" fill="none" stroke="gray" stroke-width="0.003" stroke-dasharray="0.02 0.015"/>"#,
            num(*r)
        );
    }
    for z in &plot.zeros {
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="{}" fill="black"/>"#, num(z.re), num(-z.im), num(MARKER_RADIUS));
    }
    for p in &plot.poles {
        let (x, y) = (p.re, -p.im);
        let _ = writeln!(
            s,
            r#"<path d="M {} {} L {} {} M {} {} L {} {}" stroke="red" stroke-width="0.005"/>"#,
            num(x - CROSS),
            num(y - CROSS),
            num(x + CROSS),
            num(y + CROSS),
            num(x - CROSS),
            num(y + CROSS),
            num(x + CROSS),
            num(y - CROSS)
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_plot_has_only_circles() {
        let s = render(&Plot { guides: vec![0.5], ..Default::default() });
        assert_eq!(s.matches("<circle").count(), 2);
        assert!(s.contains("stroke-dasharray"));
        assert!(!s.contains("<path"));
        assert!(s.contains(r#"viewBox="-1.150000 -1.150000 2.300000 2.300000""#));
    }

    #[test]
    fn marker_lands_right_of_centre() {
        let s = render(&Plot { zeros: vec![C64::new(0.5, 0.0)], ..Default::default() });
        assert!(s.contains(r#"<circle cx="0.500000" cy="0.000000" r="0.008000" fill="black"/>"#));
    }

    #[test]
    fn byte_stable() {
        let p = Plot { zeros: vec![C64::new(0.1, -0.3)], guides: vec![0.7], poles: vec![C64::new(0.5, 0.5)] };
        assert_eq!(render(&p), render(&p.clone()));
        assert_eq!(render(&p).matches("<path").count(), 1);
    }
}
