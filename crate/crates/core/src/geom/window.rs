use crate::error::InvalidWindow;
use crate::geom::Window;
use crate::planar::Vec2;

/// Relative tolerance on a negative discriminant before a window counts as
/// inconsistent rather than merely rounded.
const DISCRIMINANT_TOL: f64 = 1e-12;

/// Pseudo source of `w` in the frame where the origin of its half-edge is
/// at `(0, 0)` and the half-edge runs along `+x`. The result has `y >= 0`.
pub fn unfold_pseudo_source(w: &Window) -> Result<Vec2, InvalidWindow> {
    let width = w.b1 - w.b0;
    if !(width > 0.0) || !w.d0.is_finite() || !w.d1.is_finite() {
        return Err(InvalidWindow);
    }
    let rel = (width * width + (w.d0 - w.d1) * (w.d0 + w.d1)) / (2.0 * width);
    let disc = (w.d0 - rel) * (w.d0 + rel);
    let scale = w.d0 * w.d0 + width * width;
    let y = if disc >= 0.0 {
        disc.sqrt()
    } else if disc >= -DISCRIMINANT_TOL * scale {
        0.0
    } else {
        return Err(InvalidWindow);
    };
    Ok(Vec2::new(w.b0 + rel, y))
}

/// Smallest source distance over the window's interval: `d` plus the
/// distance from the pseudo source to the segment `[b0, b1]`.
pub fn window_key(w: &Window) -> f64 {
    match unfold_pseudo_source(w) {
        Ok(p) if p.x >= w.b0 && p.x <= w.b1 => w.d + p.y,
        _ => w.d + w.d0.min(w.d1),
    }
}
