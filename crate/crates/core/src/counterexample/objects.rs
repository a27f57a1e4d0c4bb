use crate::algebra::{AlgebraSpec, GradedAlgebra, DEFAULT_DEGREE_BOUND};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::free::{parse_matrix, FreeModule, ModuleMap};
use crate::resolution::{resolve_from, Presentation};
use crate::scalar::Scalar;

pub const VARIABLES: [&str; 4] = ["V", "X", "Y", "Z"];

pub const RELATIONS: [&str; 7] = [
    "V*V",
    "Z*Z",
    "X*Y",
    "V*X + alpha*X*Z",
    "V*Y + Y*Z",
    "V*X + Y*Y",
    "V*Y - X*X",
];

/// The eight monomials whose classes form a basis of the ring.
pub const LISTED_BASIS: [&str; 8] = ["1", "V", "X", "Y", "Z", "V*X", "V*Y", "V*Z"];

/// Twists of the index-0 module of the complex: `R(-1)^2`.
pub const ANCHOR_TWIST: i64 = 1;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Config {
    pub alpha: Scalar,
    /// The complex is checked on homological indices `[-window, 6]`.
    pub window: usize,
    pub s_max: usize,
    /// Extra Ext indices past `s` examined for each `M_s`.
    pub ext_horizon: usize,
    pub k_resolution_length: usize,
}

pub const POSITIVE_END: i64 = 6;

impl Default for Config {
    fn default() -> Self {
        Config {
            alpha: Scalar::from_int(2),
            window: 10,
            s_max: 4,
            ext_horizon: 3,
            k_resolution_length: 5,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        let a = &self.alpha;
        if a.is_zero() || a.is_one() || *a == Scalar::from_int(-1) {
            return Err(Error::Config(format!(
                "alpha = {a} does not have infinite multiplicative order"
            )));
        }
        if self.window < 3 {
            return Err(Error::Config("window must be at least 3".into()));
        }
        if self.s_max < 1 {
            return Err(Error::Config("s_max must be at least 1".into()));
        }
        Ok(())
    }
}

pub fn ring_spec(alpha: &Scalar) -> Result<AlgebraSpec> {
    AlgebraSpec::parse(&VARIABLES, &RELATIONS, alpha.clone(), DEFAULT_DEGREE_BOUND)
}

pub fn build_ring(cfg: &Config) -> Result<GradedAlgebra> {
    cfg.validate()?;
    GradedAlgebra::build(&ring_spec(&cfg.alpha)?)
}

/// Matrix of `d_i` as expression strings (`i <= 2`).
pub fn d_matrix(i: i64) -> Result<Vec<Vec<String>>> {
    let rows: Vec<Vec<String>> = match i {
        i if i <= 0 => vec![
            vec!["V".into(), format!("alpha^{}*X", -i)],
            vec!["Y".into(), "Z".into()],
        ],
        1 => vec![
            vec!["V".into(), "alpha^-1*X".into(), "Y*Z".into()],
            vec!["Y".into(), "Z".into(), "0".into()],
        ],
        2 => [
            ["V", "alpha^-2*X", "-Y", "0", "0", "0", "0"],
            ["Y", "Z", "alpha*X", "0", "0", "0", "0"],
            ["0", "0", "0", "V", "X", "Y", "Z"],
        ]
        .iter()
        .map(|r| r.iter().map(|s| s.to_string()).collect())
        .collect(),
        _ => {
            return Err(Error::Config(format!(
                "d_{i} is not given in closed form; it comes from a resolution"
            )))
        }
    };
    Ok(rows)
}

/// Twists of the index-`i` module of the complex for `i <= 2`.
pub fn module_twists(i: i64) -> Result<FreeModule> {
    Ok(match i {
        i if i <= 0 => FreeModule::uniform(ANCHOR_TWIST + i, 2),
        1 => FreeModule::new(vec![ANCHOR_TWIST + 1, ANCHOR_TWIST + 1, ANCHOR_TWIST + 2]),
        2 => FreeModule::new(
            [2, 2, 2, 3, 3, 3, 3].iter().map(|t| ANCHOR_TWIST + t).collect(),
        ),
        _ => return Err(Error::Config(format!("no closed-form module at index {i}"))),
    })
}

/// `d_i : C_i -> C_{i-1}` with twists anchored at `C_0 = R(-1)^2`.
pub fn build_d(alg: &GradedAlgebra, i: i64) -> Result<ModuleMap> {
    let entries = parse_matrix(alg, &d_matrix(i)?)?;
    let map = ModuleMap::with_inferred_source(module_twists(i - 1)?, entries)?;
    debug_assert_eq!(map.source(), &module_twists(i)?);
    Ok(map)
}

/// The complex on indices `[-window, positive_end]`: closed-form maps up to
/// `d_2`, then the minimal resolution of `Coker d_2`.
pub fn build_complex(alg: &GradedAlgebra, window: usize, positive_end: i64) -> Result<Complex> {
    let lo = -(window as i64);
    if positive_end < 2 {
        return Err(Error::Config("the window must reach index 2".into()));
    }
    let mut maps = Vec::new();
    for i in (lo + 1)..=2 {
        maps.push(build_d(alg, i)?);
    }
    let d2 = maps.last().unwrap().clone();
    let tail = resolve_from(alg, d2, (positive_end - 1) as usize)?;
    for k in 2..=tail.length() {
        maps.push(tail.differential(k).clone());
    }
    Complex::from_maps(lo, maps)
}

/// `M_s = Coker(d_{-s})` with generators in degree 1.
pub fn module_m(alg: &GradedAlgebra, s: usize) -> Result<Presentation> {
    if s == 0 {
        return Err(Error::Config("M_s is defined for s >= 1".into()));
    }
    let entries = parse_matrix(alg, &d_matrix(-(s as i64))?)?;
    let map = ModuleMap::with_inferred_source(FreeModule::uniform(1, 2), entries)?;
    Ok(Presentation::new(alg, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::HilbertFunction;

    #[test]
    fn coefficients_follow_powers_of_alpha() {
        let r = build_ring(&Config::default()).unwrap();
        let d = build_d(&r, -3).unwrap();
        assert_eq!(d.entry(0, 1), &r.parse_element("8*X").unwrap());
        assert_eq!(d_matrix(-3).unwrap()[0][1], "alpha^3*X");
        assert!(d_matrix(3).is_err());
        assert!(module_twists(3).is_err());
    }

    #[test]
    fn alpha_must_have_infinite_order() {
        for a in [0, 1, -1] {
            let cfg = Config {
                alpha: Scalar::from_int(a),
                ..Config::default()
            };
            assert!(matches!(build_ring(&cfg), Err(Error::Config(_))));
        }
        let small = Config {
            window: 2,
            ..Config::default()
        };
        assert!(small.validate().is_err());
    }

    #[test]
    fn hilbert_function_is_independent_of_alpha() {
        let expected = HilbertFunction::from_pairs([(0, 1), (1, 4), (2, 3)]);
        for a in ["2", "3", "-1/2", "7/5"] {
            let cfg = Config {
                alpha: a.parse().unwrap(),
                ..Config::default()
            };
            assert_eq!(build_ring(&cfg).unwrap().hilbert(), expected, "alpha = {a}");
        }
    }

    #[test]
    fn family_modules() {
        let r = build_ring(&Config::default()).unwrap();
        assert!(module_m(&r, 0).is_err());
        let m = module_m(&r, 3).unwrap();
        assert_eq!(m.generators().twists(), &[1, 1]);
        assert_eq!(m.map().source().twists(), &[2, 2]);
        assert!(build_complex(&r, 4, 1).is_err());
        let c = build_complex(&r, 4, 4).unwrap();
        assert_eq!((c.lo(), c.hi()), (-4, 4));
    }
}
