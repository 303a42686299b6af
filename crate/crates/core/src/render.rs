//! ASCII and SVG drawings of paths, heaps, point animals and multisets.
//!
//! ASCII output uses one character per lattice unit. SVG output uses 20-unit
//! cells with the origin at the bottom left.

use std::fmt::Write;

use thiserror::Error;

use crate::bijections::phi;
use crate::heap_animal::{Heap, HeapError, PointAnimal};
use crate::lattice_path::{PathError, Step, StepWord};
use crate::multiset::{Multiset, MultisetError};

pub const CELL: i64 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Heap(#[from] HeapError),
    #[error(transparent)]
    Multiset(#[from] MultisetError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Object {
    Animal,
    Path,
    Multiset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Svg,
}

/// How an `animal` token is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AnimalRepr {
    #[default]
    Heap,
    Points,
}

pub fn render(
    object: Object,
    format: Format,
    input: &str,
    repr: AnimalRepr,
) -> Result<String, RenderError> {
    Ok(match (object, repr, format) {
        (Object::Path, _, Format::Ascii) => path_ascii(&input.parse()?),
        (Object::Path, _, Format::Svg) => path_svg(&input.parse()?),
        (Object::Animal, AnimalRepr::Heap, Format::Ascii) => heap_ascii(&input.parse()?),
        (Object::Animal, AnimalRepr::Heap, Format::Svg) => heap_svg(&input.parse()?),
        (Object::Animal, AnimalRepr::Points, Format::Ascii) => points_ascii(&input.parse()?),
        (Object::Animal, AnimalRepr::Points, Format::Svg) => points_svg(&input.parse()?),
        (Object::Multiset, _, Format::Ascii) => multiset_ascii(&input.parse()?),
        (Object::Multiset, _, Format::Svg) => multiset_svg(&input.parse()?),
    })
}

/// Rows from the highest band down; `/` and `\` mark up and down steps.
pub fn path_ascii(p: &StepWord) -> String {
    let heights = p.heights();
    let top = *heights.iter().max().unwrap();
    let bottom = *heights.iter().min().unwrap();
    let mut out = String::new();
    for band in (bottom..top).rev() {
        let row: String = p
            .steps()
            .iter()
            .zip(&heights)
            .map(|(step, &h)| match step {
                Step::U if h == band => '/',
                Step::D if h - 1 == band => '\\',
                _ => ' ',
            })
            .collect();
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// Levels from the top down; each dimer is drawn as `[]` over its two cells.
pub fn heap_ascii(h: &Heap) -> String {
    let left = h.min_column();
    let width = (h.max_column() - left + 2) as usize;
    let top = h.dimers().iter().map(|d| d.level).max().unwrap_or(0);
    let mut out = String::new();
    for level in (0..=top).rev() {
        let mut row = vec!['.'; width];
        for d in h.dimers().iter().filter(|d| d.level == level) {
            let i = (d.column - left) as usize;
            row[i] = '[';
            row[i + 1] = ']';
        }
        out.extend(row);
        out.push('\n');
    }
    out
}

/// Rows from the largest `y` down; `o` marks a point.
pub fn points_ascii(a: &PointAnimal) -> String {
    let max_x = a.points().iter().map(|p| p.0).max().unwrap_or(0);
    let max_y = a.points().iter().map(|p| p.1).max().unwrap_or(0);
    let mut out = String::new();
    for y in (0..=max_y).rev() {
        out.extend((0..=max_x).map(|x| {
            if a.points().contains(&(x, y)) {
                'o'
            } else {
                '.'
            }
        }));
        out.push('\n');
    }
    out
}

/// Rows `i = n` down to `1`, with cells `x < pi_i` filled. The boundary of
/// the filled region is the path of the multiset, printed underneath.
pub fn multiset_ascii(m: &Multiset) -> String {
    let k = m.bound() as usize;
    let mut out = String::new();
    for &v in m.values().iter().rev() {
        out.extend((0..k).map(|x| if x < v as usize { '#' } else { '.' }));
        out.push('\n');
    }
    writeln!(out, "{}", phi(m)).unwrap();
    out
}

struct Svg {
    width: i64,
    height: i64,
    body: String,
}

impl Svg {
    fn new(width_cells: i64, height_cells: i64) -> Self {
        Svg {
            width: width_cells * CELL,
            height: height_cells * CELL,
            body: String::new(),
        }
    }

    /// Flips lattice `y` so that the origin sits at the bottom left.
    fn y(&self, lattice_y: i64) -> i64 {
        self.height - lattice_y * CELL
    }

    fn grid(&mut self, cols: i64, rows: i64) {
        for x in 0..=cols {
            let _ = writeln!(
                self.body,
                r##"<line x1="{0}" y1="0" x2="{0}" y2="{1}" stroke="#ddd"/>"##,
                x * CELL,
                self.height
            );
        }
        for y in 0..=rows {
            let _ = writeln!(
                self.body,
                r##"<line x1="0" y1="{0}" x2="{1}" y2="{0}" stroke="#ddd"/>"##,
                y * CELL,
                self.width
            );
        }
    }

    fn rect(&mut self, x: i64, y: i64, w: i64, h: i64, fill: &str) {
        let _ = writeln!(
            self.body,
            r##"<rect x="{}" y="{}" width="{}" height="{}" fill="{fill}" stroke="#000"/>"##,
            x * CELL,
            self.y(y + h),
            w * CELL,
            h * CELL
        );
    }

    fn polyline(&mut self, points: &[(i64, i64)], stroke: &str) {
        let coords: Vec<String> = points
            .iter()
            .map(|&(x, y)| format!("{},{}", x * CELL, self.y(y)))
            .collect();
        let _ = writeln!(
            self.body,
            r##"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="2"/>"##,
            coords.join(" ")
        );
    }

    fn circle(&mut self, x: i64, y: i64) {
        let _ = writeln!(
            self.body,
            r##"<circle cx="{}" cy="{}" r="5" fill="#000"/>"##,
            x * CELL,
            self.y(y)
        );
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n{}</svg>\n",
            self.body,
            w = self.width,
            h = self.height
        )
    }
}

pub fn path_svg(p: &StepWord) -> String {
    let heights = p.heights();
    let top = *heights.iter().max().unwrap();
    let bottom = *heights.iter().min().unwrap();
    let len = p.len() as i64;
    let mut svg = Svg::new(len, top - bottom);
    svg.grid(len, top - bottom);
    svg.polyline(&[(0, -bottom), (len, -bottom)], "#888");
    let mut pts = vec![(0, -bottom)];
    let mut h = 0;
    for (i, s) in p.steps().iter().enumerate() {
        h += s.delta();
        pts.push((i as i64 + 1, h - bottom));
    }
    svg.polyline(&pts, "#c00");
    svg.finish()
}

pub fn heap_svg(h: &Heap) -> String {
    let left = i64::from(h.min_column());
    let width = i64::from(h.max_column()) - left + 2;
    let levels = h.dimers().iter().map(|d| d.level).max().unwrap_or(0) as i64 + 1;
    let mut svg = Svg::new(width, levels);
    for d in h.dimers() {
        svg.rect(i64::from(d.column) - left, i64::from(d.level), 2, 1, "#9cf");
    }
    svg.finish()
}

pub fn points_svg(a: &PointAnimal) -> String {
    let max_x = a.points().iter().map(|p| p.0).max().unwrap_or(0) as i64;
    let max_y = a.points().iter().map(|p| p.1).max().unwrap_or(0) as i64;
    // one cell of margin on every side
    let mut svg = Svg::new(max_x + 2, max_y + 2);
    let at = |(x, y): (u32, u32)| (i64::from(x) + 1, i64::from(y) + 1);
    for &(x, y) in a.points() {
        for (dx, dy) in [(1, 0), (0, 1), (1, 1)] {
            let q = (x + dx, y + dy);
            if a.points().contains(&q) {
                svg.polyline(&[at((x, y)), at(q)], "#000");
            }
        }
    }
    for &p in a.points() {
        let (x, y) = at(p);
        svg.circle(x, y);
    }
    svg.finish()
}

pub fn multiset_svg(m: &Multiset) -> String {
    let k = i64::from(m.bound());
    let n = m.len() as i64;
    let mut svg = Svg::new(k, n);
    for (i, &v) in m.values().iter().enumerate() {
        if v > 0 {
            svg.rect(0, i as i64, i64::from(v), 1, "#eee");
        }
    }
    svg.grid(k, n);
    let mut pts = vec![(0, 0)];
    let (mut x, mut y) = (0, 0);
    for s in phi(m).steps() {
        match s {
            Step::U => x += 1,
            Step::D => y += 1,
        }
        pts.push((x, y));
    }
    svg.polyline(&pts, "#c00");
    svg.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyck_staircase() {
        let out = render(Object::Path, Format::Ascii, "UUDD", AnimalRepr::Heap).unwrap();
        assert_eq!(out, " /\\ \n/  \\\n");
        assert!(out.lines().all(|l| l.chars().count() == 4));
    }

    #[test]
    fn grand_dyck_below_axis() {
        assert_eq!(path_ascii(&"UDDU".parse().unwrap()), "/\\  \n  \\/\n");
    }

    #[test]
    fn stacked_heap() {
        let h: Heap = "(0,0);(0,1)".parse().unwrap();
        assert_eq!(heap_ascii(&h), "[]\n[]\n");
        let svg = heap_svg(&h);
        assert_eq!(svg.matches("<rect").count(), 2);
        assert!(svg.contains(r#"<rect x="0" y="20" width="40" height="20""#));
        assert!(svg.contains(r#"<rect x="0" y="0" width="40" height="20""#));
    }

    #[test]
    fn side_by_side_heap() {
        let h: Heap = "(0,0);(-1,1);(1,1)".parse().unwrap();
        assert_eq!(heap_ascii(&h), "[][]\n.[].\n");
    }

    #[test]
    fn multiset_grid() {
        let m: Multiset = "2,5,5,7,7,7,8,8".parse().unwrap();
        let out = multiset_ascii(&m);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[7], "##......");
        assert_eq!(lines[0], "########");
        assert_eq!(lines[8], phi(&m).to_string());
        let svg = multiset_svg(&m);
        // the path ends at the top right corner (k, n)
        assert!(svg.contains("160,0\""));
    }

    #[test]
    fn points() {
        let a: PointAnimal = "(0,0);(1,0);(1,1)".parse().unwrap();
        assert_eq!(points_ascii(&a), ".o\noo\n");
        assert_eq!(points_svg(&a).matches("<circle").count(), 3);
    }

    #[test]
    fn parse_errors_surface() {
        assert!(render(Object::Path, Format::Svg, "UXD", AnimalRepr::Heap).is_err());
        assert!(render(Object::Animal, Format::Ascii, "(1,0)", AnimalRepr::Heap).is_err());
    }
}
