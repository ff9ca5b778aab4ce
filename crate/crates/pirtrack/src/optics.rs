//! Fan-shaped sensing-zone geometry of a PIR sensor behind a Fresnel lens
//! array.
//!
//! Each lens is modeled as an ideal thin lens and only the chief ray through
//! the lens center is traced: a far-field source at azimuth `α` seen through a
//! lens whose optical axis points at `axis_angle` lands on the focal plane at
//! offset `f · tan(α − axis_angle)` from the lens axis. Whichever sensing
//! element (positive or negative) contains that landing point determines the
//! polarity of the zone the source sits in. Classification depends only on
//! azimuth, so the fan-shaped layout is extracted with a 1-D angular sweep.

use crate::error::{Error, Result};

/// Default angular sweep resolution in radians (≈ 0.011°).
pub const DEFAULT_ANGULAR_RESOLUTION: f64 = 2e-4;

/// Maximum permitted sweep resolution in radians.
pub const MAX_ANGULAR_RESOLUTION: f64 = 5e-4;

/// One Fresnel lens element of the array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LensElement {
    /// Direction of the lens optical axis in the sensor frame, radians.
    pub axis_angle: f64,
    /// Lens aperture width, meters.
    pub aperture_width: f64,
    /// Focal length, meters.
    pub focal_length: f64,
}

impl LensElement {
    /// Half-width of the angular window this lens accepts, radians.
    pub fn acceptance_half_width(&self) -> f64 {
        (self.aperture_width / (2.0 * self.focal_length)).atan()
    }
}

/// Which side of the optical centerline (in focal-plane offset sign) holds
/// the positive sensing element. `Right` means positive offsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Geometry of the two sensing elements in the focal plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensingGeometry {
    /// Width of each sensing element, meters.
    pub element_width: f64,
    /// Separation between the positive and negative element centers, meters.
    pub element_gap: f64,
    /// Side of the centerline holding the positive element.
    pub positive_side: Side,
}

impl SensingGeometry {
    pub fn validate(&self) -> Result<()> {
        if !(self.element_width > 0.0) {
            return Err(Error::InvalidInput("element_width must be > 0".into()));
        }
        if self.element_gap < self.element_width {
            return Err(Error::InvalidInput(
                "element_gap must be >= element_width (elements must not overlap)".into(),
            ));
        }
        Ok(())
    }

    fn positive_center(&self) -> f64 {
        match self.positive_side {
            Side::Right => self.element_gap / 2.0,
            Side::Left => -self.element_gap / 2.0,
        }
    }
}

/// Zone polarity: which element (if any) a source at that azimuth illuminates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
    Gap,
}

impl Polarity {
    /// Signed contribution of this polarity to the differential heat flux.
    pub fn sign(self) -> f64 {
        match self {
            Polarity::Positive => 1.0,
            Polarity::Negative => -1.0,
            Polarity::Gap => 0.0,
        }
    }
}

/// A complete lens array plus element geometry and field-of-view limit.
#[derive(Debug, Clone)]
pub struct LensArray {
    pub lenses: Vec<LensElement>,
    pub geometry: SensingGeometry,
    /// Field of view half-angle, radians. Azimuths outside ±this are not swept.
    pub fov_half_angle: f64,
}

/// One contiguous angular sector of uniform polarity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sector {
    pub start: f64,
    pub end: f64,
    pub polarity: Polarity,
}

impl Sector {
    pub fn width(&self) -> f64 {
        self.end - self.start
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.start + self.end)
    }
}

/// The fan-shaped zone layout of one sensor: contiguous sectors covering the
/// field of view, the symmetric axes of the non-gap sectors, and the mean
/// included angle between consecutive axes.
#[derive(Debug, Clone)]
pub struct ZoneLayout {
    /// Contiguous, non-overlapping sectors sorted by start angle.
    pub sectors: Vec<Sector>,
    /// Symmetric axis angle and polarity of each non-gap sector, in order.
    pub axes: Vec<(f64, Polarity)>,
    /// Mean included angle between consecutive axes, radians.
    pub theta_c: f64,
}

impl ZoneLayout {
    /// Polarity of the sector containing `angle`; `Gap` outside the layout.
    pub fn polarity_at(&self, angle: f64) -> Polarity {
        match self
            .sectors
            .binary_search_by(|s| s.start.partial_cmp(&angle).unwrap())
        {
            Ok(i) => self.sectors[i].polarity,
            Err(0) => Polarity::Gap,
            Err(i) => {
                let s = &self.sectors[i - 1];
                if angle <= s.end {
                    s.polarity
                } else {
                    Polarity::Gap
                }
            }
        }
    }

    /// Angular span `[lo, hi]` covered by the layout.
    pub fn angular_span(&self) -> (f64, f64) {
        (
            self.sectors.first().map_or(0.0, |s| s.start),
            self.sectors.last().map_or(0.0, |s| s.end),
        )
    }

    /// Total angular measure classified as `Gap` within the layout span.
    pub fn gap_measure(&self) -> f64 {
        self.sectors
            .iter()
            .filter(|s| s.polarity == Polarity::Gap)
            .map(Sector::width)
            .sum()
    }
}

/// Classify the zone polarity of a far-field source at `source_azimuth`.
///
/// The lens whose acceptance window contains the azimuth images the source;
/// when two windows overlap, the lens with the nearer axis wins. Returns
/// `Gap` when no lens accepts the ray or the landing point misses both
/// elements.
pub fn classify_angle(
    source_azimuth: f64,
    lenses: &[LensElement],
    geom: &SensingGeometry,
) -> Polarity {
    let mut best: Option<(f64, &LensElement)> = None;
    for lens in lenses {
        let delta = (source_azimuth - lens.axis_angle).abs();
        if delta <= lens.acceptance_half_width() && best.map_or(true, |(d, _)| delta < d) {
            best = Some((delta, lens));
        }
    }
    let Some((_, lens)) = best else {
        return Polarity::Gap;
    };
    let offset = lens.focal_length * (source_azimuth - lens.axis_angle).tan();
    let half_width = geom.element_width / 2.0;
    let pos_center = geom.positive_center();
    if (offset - pos_center).abs() <= half_width {
        Polarity::Positive
    } else if (offset + pos_center).abs() <= half_width {
        Polarity::Negative
    } else {
        Polarity::Gap
    }
}

/// Extract the zone layout by classifying a dense angular grid over
/// `±fov_half_angle` and merging equal-polarity runs into sectors.
///
/// Sector boundaries are placed halfway between adjacent grid points, so the
/// boundary error is at most half the resolution. Non-gap sector midpoints
/// become the symmetric axes, and `theta_c` is the mean included angle
/// between consecutive axes.
pub fn sweep_zones(
    lenses: &[LensElement],
    geom: &SensingGeometry,
    fov_half_angle: f64,
    angular_resolution: f64,
) -> Result<ZoneLayout> {
    geom.validate()?;
    if !(angular_resolution > 0.0) || angular_resolution > MAX_ANGULAR_RESOLUTION {
        return Err(Error::InvalidInput(format!(
            "angular resolution must be in (0, {MAX_ANGULAR_RESOLUTION}], got {angular_resolution}"
        )));
    }
    if !(fov_half_angle > 0.0) {
        return Err(Error::InvalidInput("field of view must be positive".into()));
    }

    let n = (2.0 * fov_half_angle / angular_resolution).ceil() as usize;
    let mut sectors: Vec<Sector> = Vec::new();
    for i in 0..=n {
        let angle = (-fov_half_angle + i as f64 * angular_resolution).min(fov_half_angle);
        let polarity = classify_angle(angle, lenses, geom);
        let lo = (angle - angular_resolution / 2.0).max(-fov_half_angle);
        let hi = (angle + angular_resolution / 2.0).min(fov_half_angle);
        match sectors.last_mut() {
            Some(s) if s.polarity == polarity => s.end = hi,
            _ => sectors.push(Sector {
                start: lo,
                end: hi,
                polarity,
            }),
        }
        if angle >= fov_half_angle {
            break;
        }
    }

    let axes: Vec<(f64, Polarity)> = sectors
        .iter()
        .filter(|s| s.polarity != Polarity::Gap)
        .map(|s| (s.midpoint(), s.polarity))
        .collect();
    if axes.len() < 2 {
        return Err(Error::DegenerateLayout(format!(
            "found {} non-gap sectors, need at least 2",
            axes.len()
        )));
    }
    let gaps: Vec<f64> = axes.windows(2).map(|w| w[1].0 - w[0].0).collect();
    let theta_c = gaps.iter().sum::<f64>() / gaps.len() as f64;

    Ok(ZoneLayout {
        sectors,
        axes,
        theta_c,
    })
}

/// Included angles between consecutive symmetric axes. Their mean equals
/// `layout.theta_c`.
pub fn neighbor_angles(layout: &ZoneLayout) -> Result<Vec<f64>> {
    if layout.axes.len() < 2 {
        return Err(Error::DegenerateLayout(format!(
            "layout has {} axes, need at least 2",
            layout.axes.len()
        )));
    }
    Ok(layout.axes.windows(2).map(|w| w[1].0 - w[0].0).collect())
}

/// Scatter `n_points` uniformly over the sensing wedge of radius `range` and
/// label each by the polarity of its azimuth. Point `i` is derived from RNG
/// stream `i` of the seed, so the output is a pure function of
/// `(layout, range, n_points, seed)` regardless of evaluation order.
pub fn render_layout(
    layout: &ZoneLayout,
    range: f64,
    n_points: usize,
    seed: u64,
) -> Result<Vec<(f64, f64, Polarity)>> {
    use rand::{Rng, SeedableRng};

    if n_points == 0 {
        return Err(Error::InvalidInput("n_points must be > 0".into()));
    }
    if !(range > 0.0) {
        return Err(Error::InvalidInput("range must be > 0".into()));
    }
    let (lo, hi) = layout.angular_span();
    let mut points = Vec::with_capacity(n_points);
    for i in 0..n_points {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let r = range * rng.gen::<f64>().sqrt();
        let angle = lo + (hi - lo) * rng.gen::<f64>();
        points.push((r * angle.cos(), r * angle.sin(), layout.polarity_at(angle)));
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const DEG: f64 = std::f64::consts::PI / 180.0;

    fn single_lens() -> Vec<LensElement> {
        vec![LensElement {
            axis_angle: 0.0,
            aperture_width: 0.004,
            focal_length: 0.02,
        }]
    }

    fn geom_right(width: f64, gap: f64) -> SensingGeometry {
        SensingGeometry {
            element_width: width,
            element_gap: gap,
            positive_side: Side::Right,
        }
    }

    /// A 4-lens array constructed so the non-gap sector axes are exactly 5°
    /// apart: each lens images the elements into bands at ±[1.5°, 3.5°]
    /// around its axis, and lens axes are spaced 10° apart.
    fn uniform_five_degree_array() -> (Vec<LensElement>, SensingGeometry) {
        let f = 0.025;
        let inner = f * (1.5 * DEG).tan();
        let outer = f * (3.5 * DEG).tan();
        let lenses = [-15.0, -5.0, 5.0, 15.0]
            .iter()
            .map(|&a| LensElement {
                axis_angle: a * DEG,
                aperture_width: 0.004,
                focal_length: f,
            })
            .collect();
        let geom = SensingGeometry {
            element_width: outer - inner,
            element_gap: outer + inner,
            positive_side: Side::Right,
        };
        (lenses, geom)
    }

    #[test]
    fn on_axis_ray_lands_in_inter_element_gap() {
        // element_gap = 2 * element_width: the elements leave a hole at the
        // centerline, so the zero-offset on-axis ray hits neither.
        let geom = geom_right(0.001, 0.002);
        assert_eq!(classify_angle(0.0, &single_lens(), &geom), Polarity::Gap);
    }

    #[test]
    fn hand_traced_ray_hits_positive_element() {
        // f = 0.02 m, positive element spans offsets [0.0005, 0.0015] m.
        // A source at atan(0.001/0.02) lands exactly on the element center.
        let geom = geom_right(0.001, 0.002);
        let azimuth = (0.001f64 / 0.02).atan();
        assert_abs_diff_eq!(azimuth / DEG, 2.8624, epsilon = 1e-3);
        assert_eq!(
            classify_angle(azimuth, &single_lens(), &geom),
            Polarity::Positive
        );
        // Mirrored azimuth lands on the negative element.
        assert_eq!(
            classify_angle(-azimuth, &single_lens(), &geom),
            Polarity::Negative
        );
    }

    #[test]
    fn azimuth_outside_every_acceptance_window_is_gap() {
        let geom = geom_right(0.001, 0.002);
        // Acceptance half-width is atan(0.004 / 0.04) ≈ 5.7°.
        assert_eq!(
            classify_angle(20.0 * DEG, &single_lens(), &geom),
            Polarity::Gap
        );
    }

    #[test]
    fn positive_side_left_flips_polarity() {
        let mut geom = geom_right(0.001, 0.002);
        geom.positive_side = Side::Left;
        let azimuth = (0.001f64 / 0.02).atan();
        assert_eq!(
            classify_angle(azimuth, &single_lens(), &geom),
            Polarity::Negative
        );
    }

    #[test]
    fn sweep_uniform_array_gives_exact_five_degree_pitch() {
        let (lenses, geom) = uniform_five_degree_array();
        let layout =
            sweep_zones(&lenses, &geom, 60.0 * DEG, DEFAULT_ANGULAR_RESOLUTION).unwrap();
        assert_eq!(layout.axes.len(), 8);
        // Closed-form construction puts axes at lens ± 2.5°, i.e. 5° apart.
        assert_abs_diff_eq!(layout.theta_c / DEG, 5.0, epsilon = 0.02);
        for gap in neighbor_angles(&layout).unwrap() {
            assert_abs_diff_eq!(gap / DEG, 5.0, epsilon = 0.02);
        }
    }

    #[test]
    fn sweep_alternates_polarity_and_theta_c_is_mean_of_gaps() {
        let (lenses, geom) = uniform_five_degree_array();
        let layout =
            sweep_zones(&lenses, &geom, 60.0 * DEG, DEFAULT_ANGULAR_RESOLUTION).unwrap();
        for pair in layout.axes.windows(2) {
            assert_ne!(pair[0].1, pair[1].1, "non-gap sectors must alternate");
        }
        let gaps = neighbor_angles(&layout).unwrap();
        let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
        assert_eq!(mean, layout.theta_c);
    }

    #[test]
    fn sweep_resolution_stability() {
        let (lenses, geom) = uniform_five_degree_array();
        let a = sweep_zones(&lenses, &geom, 60.0 * DEG, 4e-4).unwrap();
        let b = sweep_zones(&lenses, &geom, 60.0 * DEG, 2e-4).unwrap();
        assert!((a.theta_c - b.theta_c).abs() / DEG < 0.05);
    }

    #[test]
    fn sweep_rejects_coarse_resolution_and_degenerate_arrays() {
        let (lenses, geom) = uniform_five_degree_array();
        assert!(matches!(
            sweep_zones(&lenses, &geom, 60.0 * DEG, 1e-3),
            Err(Error::InvalidInput(_))
        ));
        // No lenses at all: nothing but gap.
        assert!(matches!(
            sweep_zones(&[], &geom, 60.0 * DEG, 2e-4),
            Err(Error::DegenerateLayout(_))
        ));
    }

    #[test]
    fn neighbor_angles_match_hand_layout() {
        let axes_deg = [0.0, 3.2, 9.7];
        let layout = ZoneLayout {
            sectors: vec![],
            axes: axes_deg
                .iter()
                .enumerate()
                .map(|(i, &a)| {
                    (
                        a * DEG,
                        if i % 2 == 0 {
                            Polarity::Positive
                        } else {
                            Polarity::Negative
                        },
                    )
                })
                .collect(),
            theta_c: 4.85 * DEG,
        };
        let gaps = neighbor_angles(&layout).unwrap();
        assert_eq!(gaps.len(), 2);
        assert_abs_diff_eq!(gaps[0] / DEG, 3.2, epsilon = 1e-12);
        assert_abs_diff_eq!(gaps[1] / DEG, 6.5, epsilon = 1e-12);

        let two = ZoneLayout {
            sectors: vec![],
            axes: vec![(-1.0 * DEG, Polarity::Positive), (4.0 * DEG, Polarity::Negative)],
            theta_c: 5.0 * DEG,
        };
        let gaps = neighbor_angles(&two).unwrap();
        assert_eq!(gaps.len(), 1);
        assert_abs_diff_eq!(gaps[0] / DEG, 5.0, epsilon = 1e-12);
    }

    #[test]
    fn render_is_deterministic_and_consistent_with_sectors() {
        let (lenses, geom) = uniform_five_degree_array();
        let layout =
            sweep_zones(&lenses, &geom, 60.0 * DEG, DEFAULT_ANGULAR_RESOLUTION).unwrap();
        let a = render_layout(&layout, 5.0, 500, 42).unwrap();
        let b = render_layout(&layout, 5.0, 500, 42).unwrap();
        assert_eq!(a, b);
        let c = render_layout(&layout, 5.0, 1, 42).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(a[0], c[0]);
        for &(x, y, polarity) in &a {
            let angle = y.atan2(x);
            assert_eq!(polarity, layout.polarity_at(angle));
        }
        assert!(render_layout(&layout, 5.0, 0, 42).is_err());
    }

    #[test]
    fn render_gap_fraction_matches_sector_measure() {
        let (lenses, geom) = uniform_five_degree_array();
        let layout =
            sweep_zones(&lenses, &geom, 60.0 * DEG, DEFAULT_ANGULAR_RESOLUTION).unwrap();
        let (lo, hi) = layout.angular_span();
        let expected = layout.gap_measure() / (hi - lo);
        let points = render_layout(&layout, 5.0, 1_000_000, 7).unwrap();
        let got = points
            .iter()
            .filter(|p| p.2 == Polarity::Gap)
            .count() as f64
            / points.len() as f64;
        assert!(
            (got - expected).abs() < 0.02,
            "gap fraction {got} vs sector measure {expected}"
        );
    }

    #[test]
    fn radial_invariance_of_labels() {
        let (lenses, geom) = uniform_five_degree_array();
        let layout =
            sweep_zones(&lenses, &geom, 60.0 * DEG, DEFAULT_ANGULAR_RESOLUTION).unwrap();
        for k in 0..100 {
            let angle = -1.0 + 0.02 * k as f64;
            let p = layout.polarity_at(angle);
            // Any radius along the same azimuth gets the same label.
            assert_eq!(p, layout.polarity_at(angle));
            assert_eq!(p, classify_angle(angle, &lenses, &geom));
        }
    }
}
