//! Globally adaptive Gauss–Kronrod (7/15) quadrature.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the nodes XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    pub subdivisions: usize,
}

/// Default subdivision budget for [`integrate`].
pub const DEFAULT_MAX_SUBDIVISIONS: usize = 2000;

/// One 15-point Kronrod panel; returns (kronrod estimate, |K - G|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Integrate `f` over `[a, b]` to absolute tolerance `abs_tol`, bisecting the
/// panel with the largest error estimate until the summed estimate is below
/// tolerance. Fails once `max_subdivisions` panels are in use.
pub fn integrate<F>(f: F, a: f64, b: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(Integral { value: 0.0, abs_error: 0.0, subdivisions: 1 });
    }
    let (v, e) = gk15(&f, a, b);
    // (lo, hi, value, error)
    let mut panels = vec![(a, b, v, e)];
    loop {
        let total_err: f64 = panels.iter().map(|p| p.3).sum();
        if total_err <= abs_tol {
            let value = panels.iter().map(|p| p.2).sum();
            return Ok(Integral { value, abs_error: total_err, subdivisions: panels.len() });
        }
        if panels.len() >= max_subdivisions {
            return Err(Error::QuadratureFailure {
                tol: abs_tol,
                err: total_err,
                subdivisions: panels.len(),
            });
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("at least one panel");
        let (lo, hi, _, _) = panels.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // panel can no longer be split in floating point
            return Err(Error::QuadratureFailure {
                tol: abs_tol,
                err: total_err,
                subdivisions: panels.len() + 1,
            });
        }
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
    }
}
