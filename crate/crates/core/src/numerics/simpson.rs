use alloc::vec::Vec;

use crate::{Error, Result};

/// Axis-aligned integration domain `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rectangle {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rectangle {
    pub const UNIT: Rectangle = Rectangle { x0: 0.0, x1: 1.0, y0: 0.0, y1: 1.0 };
}

fn check_panels(panels: usize) -> Result<()> {
    if panels < 2 || !panels.is_multiple_of(2) {
        return Err(Error::BadPanelCount(panels));
    }
    Ok(())
}

/// Composite Simpson weights `1, 4, 2, 4, …, 4, 1` scaled by `h/3`, one per node.
pub fn simpson_weights(panels: usize, h: f64) -> Result<Vec<f64>> {
    check_panels(panels)?;
    Ok((0..=panels)
        .map(|i| {
            let w = if i == 0 || i == panels {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            w * h / 3.0
        })
        .collect())
}

pub fn simpson_1d<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> Result<f64> {
    check_panels(panels)?;
    let h = (b - a) / panels as f64;
    let weights = simpson_weights(panels, h)?;
    Ok(weights
        .iter()
        .enumerate()
        .map(|(i, w)| w * f(a + i as f64 * h))
        .sum())
}

/// Tensor-product composite Simpson rule; `panels` is `(x panels, y panels)`.
pub fn simpson_2d<F: Fn(f64, f64) -> f64>(f: F, domain: Rectangle, panels: (usize, usize)) -> Result<f64> {
    let (nx, ny) = panels;
    check_panels(nx)?;
    check_panels(ny)?;
    let hx = (domain.x1 - domain.x0) / nx as f64;
    let hy = (domain.y1 - domain.y0) / ny as f64;
    let wx = simpson_weights(nx, hx)?;
    let wy = simpson_weights(ny, hy)?;
    let mut total = 0.0;
    for (i, wi) in wx.iter().enumerate() {
        let x = domain.x0 + i as f64 * hx;
        let row: f64 = wy
            .iter()
            .enumerate()
            .map(|(j, wj)| wj * f(x, domain.y0 + j as f64 * hy))
            .sum();
        total += wi * row;
    }
    Ok(total)
}
