//! SVG snapshots of a solution: each route drawn up to the snapshot time.

use std::fmt::Write;

use anyhow::{bail, Result};
use mrp_core::{Cell, Instance, Route, Time};

const CELL: i32 = 32;
const MARGIN: i32 = 16;
const LEGEND: i32 = 180;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

fn center(c: Cell) -> (i32, i32) {
    (MARGIN + c.x * CELL + CELL / 2, MARGIN + c.y * CELL + CELL / 2)
}

/// One SVG document per snapshot time.
pub fn render(instance: &Instance, routes: &[Route], times: &[Time]) -> Result<Vec<String>> {
    times.iter().map(|&t| snapshot(instance, routes, t)).collect()
}

pub fn snapshot(instance: &Instance, routes: &[Route], t: Time) -> Result<String> {
    if t < 1 || t > instance.horizon {
        bail!("snapshot time {t} outside 1..={}", instance.horizon);
    }
    let w = instance.width as i32 * CELL + 2 * MARGIN;
    let h = (instance.height as i32 * CELL + 2 * MARGIN).max(MARGIN + 20 * (routes.len() as i32 + 5));
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{h}" viewBox="0 0 {} {h}" font-family="sans-serif" font-size="11">"#,
        w + LEGEND,
        w + LEGEND
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{MARGIN}" y="12">t = {t}</text>"#);

    for y in 0..instance.height as i32 {
        for x in 0..instance.width as i32 {
            let c = Cell::new(x, y);
            let fill = if instance.obstacles.contains(&c) {
                "#333333"
            } else if c == instance.launcher {
                "#ffe08a"
            } else {
                "#f7f7f7"
            };
            let _ = writeln!(
                s,
                r##"<rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#cccccc"/>"##,
                MARGIN + x * CELL,
                MARGIN + y * CELL
            );
        }
    }
    for item in &instance.items {
        let (cx, cy) = center(item.cell);
        let _ = writeln!(s, r##"<circle cx="{cx}" cy="{cy}" r="9" fill="none" stroke="#444444"/>"##);
        let _ = writeln!(s, r#"<text x="{cx}" y="{}" text-anchor="middle">{}</text>"#, cy + 4, item.id);
    }
    for robot in &instance.extant_robots {
        let (cx, cy) = center(robot.start_cell);
        let _ = writeln!(
            s,
            r##"<polygon points="{},{} {},{} {},{}" fill="none" stroke="#444444"/>"##,
            cx,
            cy - 11,
            cx - 10,
            cy + 8,
            cx + 10,
            cy + 8
        );
    }

    for (k, r) in routes.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let drawn: Vec<(i32, i32)> = r.positions.iter().filter(|p| p.time <= t).map(|p| center(p.cell)).collect();
        let Some(&(hx, hy)) = drawn.last() else { continue };
        if drawn.len() > 1 {
            let points: Vec<String> = drawn.iter().map(|(x, y)| format!("{},{}", x + k as i32 % 3 - 1, y + k as i32 % 3 - 1)).collect();
            let _ = writeln!(
                s,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="3" stroke-opacity="0.8"/>"#,
                points.join(" ")
            );
        }
        if r.positions.last().is_some_and(|p| p.time >= t) {
            let _ = writeln!(s, r#"<circle cx="{hx}" cy="{hy}" r="5" fill="{color}"/>"#);
        }
        for p in r.pickups.iter().filter(|p| p.time <= t) {
            let (cx, cy) = center(instance.items[p.item].cell);
            let _ = writeln!(s, r#"<circle cx="{cx}" cy="{cy}" r="9" fill="{color}" fill-opacity="0.35"/>"#);
        }
    }

    let lx = w + 8;
    let mut legend: Vec<(Box<dyn Fn(i32) -> String>, String)> = vec![
        (Box::new(move |y| format!(r##"<rect x="{lx}" y="{}" width="14" height="14" fill="#ffe08a"/>"##, y - 7)), "launcher".into()),
        (Box::new(move |y| format!(r##"<rect x="{lx}" y="{}" width="14" height="14" fill="#333333"/>"##, y - 7)), "obstacle".into()),
        (Box::new(move |y| format!(r##"<circle cx="{}" cy="{y}" r="7" fill="none" stroke="#444444"/>"##, lx + 7)), "item".into()),
        (
            Box::new(move |y| format!(r##"<polygon points="{},{} {},{} {},{}" fill="none" stroke="#444444"/>"##, lx + 7, y - 8, lx, y + 6, lx + 14, y + 6)),
            "extant start".into(),
        ),
    ];
    for (k, r) in routes.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let who = match r.owner {
            Some(o) => format!("route {k} (extant {o})"),
            None => format!("route {k} (t {}-{})", r.start_time, r.end_time()),
        };
        legend.push((Box::new(move |y| format!(r#"<rect x="{lx}" y="{}" width="14" height="4" fill="{color}"/>"#, y - 2)), who));
    }
    for (k, (swatch, label)) in legend.iter().enumerate() {
        let y = MARGIN + 4 + 20 * k as i32;
        let _ = writeln!(s, "{}", swatch(y));
        let _ = writeln!(s, r#"<text x="{}" y="{}">{label}</text>"#, lx + 22, y + 4);
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::corridor;
    use mrp_core::Pickup;

    #[test]
    fn empty_solution_draws_only_the_grid() {
        let svg = snapshot(&corridor(), &[], 3).unwrap();
        assert!(!svg.contains("<polyline"));
        assert_eq!(svg.matches(r#"width="32""#).count(), 4);
    }

    #[test]
    fn path_is_cut_at_the_snapshot() {
        let inst = corridor();
        let r = Route::from_cells(1, &[Cell::new(0, 0), Cell::new(1, 0), Cell::new(2, 0), Cell::new(1, 0), Cell::new(0, 0)], vec![Pickup { item: 1, time: 3 }], None);
        let early = snapshot(&inst, std::slice::from_ref(&r), 2).unwrap();
        let full = snapshot(&inst, std::slice::from_ref(&r), 5).unwrap();
        let points = |svg: &str| svg.lines().find(|l| l.starts_with("<polyline")).unwrap().matches(',').count();
        assert_eq!(points(&early), 2);
        assert_eq!(points(&full), 5);
        assert_eq!(full, snapshot(&inst, &[r], 5).unwrap());
    }

    #[test]
    fn time_outside_the_horizon_is_an_error() {
        assert!(snapshot(&corridor(), &[], 0).is_err());
        assert!(snapshot(&corridor(), &[], 9).is_err());
    }
}
