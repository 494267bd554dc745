//! Seeded random instance generators.
//!
//! Instances are deterministic functions of a [`GenConfig`] and a
//! [`SplitMix64`] stream. Complexes are generated degreewise with each
//! differential drawn from the kernel of the previous one, so
//! `d . d = 0` holds by construction; chain maps are random combinations
//! of a basis of the chain hom space; fibrations are twisted direct-sum
//! projections; weak equivalences are twisted pad inclusions (or their
//! retractions).

use std::collections::BTreeMap;

use hopull_core::chain::{hom_basis, ChainComplex, ChainMap, DirectSum};
use hopull_core::cospan::{Cospan, CospanMorphism, Replacement, SigmaTag};
use hopull_core::hopull::{pullback_square, CommSquare, Leg, SquareConnectors};
use hopull_core::linfp::{FieldCtx, Matrix};
use thiserror::Error;

use crate::rng::SplitMix64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("degree range [{0}, {1}] is empty")]
    EmptyDegreeRange(i64, i64),
    #[error("max_dim must be at least 1")]
    ZeroMaxDim,
    #[error("invalid modulus: {0}")]
    BadModulus(hopull_core::Error),
}

/// Configuration for the generators and suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub p: u64,
    pub deg_min: i64,
    pub deg_max: i64,
    pub max_dim: usize,
    pub trials: usize,
}

impl GenConfig {
    /// Desk scale: degrees in [-3, 6], dimensions up to 4, prime 5.
    pub fn default_with(seed: u64, trials: usize) -> GenConfig {
        GenConfig {
            seed,
            p: 5,
            deg_min: -3,
            deg_max: 6,
            max_dim: 4,
            trials,
        }
    }

    pub fn validate(&self) -> Result<FieldCtx, ConfigError> {
        if self.trials == 0 {
            return Err(ConfigError::NoTrials);
        }
        if self.deg_min > self.deg_max {
            return Err(ConfigError::EmptyDegreeRange(self.deg_min, self.deg_max));
        }
        if self.max_dim == 0 {
            return Err(ConfigError::ZeroMaxDim);
        }
        FieldCtx::new(self.p).map_err(ConfigError::BadModulus)
    }
}

/// Generator state: a config plus a deterministic stream.
pub struct Gen {
    pub ctx: FieldCtx,
    cfg: GenConfig,
    rng: SplitMix64,
}

impl Gen {
    pub fn new(cfg: &GenConfig, rng: SplitMix64) -> Result<Gen, ConfigError> {
        Ok(Gen {
            ctx: cfg.validate()?,
            cfg: *cfg,
            rng,
        })
    }

    /// Stream seeded as `cfg.seed ^ trial`, the per-trial convention of
    /// the suites.
    pub fn for_trial(cfg: &GenConfig, trial: usize) -> Result<Gen, ConfigError> {
        Gen::new(cfg, SplitMix64::new(cfg.seed ^ trial as u64))
    }

    pub fn rng(&mut self) -> &mut SplitMix64 {
        &mut self.rng
    }

    fn residue(&mut self) -> u64 {
        self.rng.residue(self.ctx.modulus())
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let entries = (0..rows * cols).map(|_| self.residue()).collect();
        Matrix::new(rows, cols, entries, &self.ctx).expect("reduced entries")
    }

    /// A random support window inside the configured degree range, at
    /// most four degrees wide.
    fn window(&mut self) -> (i64, usize) {
        let span_max = ((self.cfg.deg_max - self.cfg.deg_min + 1) as u64).min(4);
        let len = 1 + self.rng.below(span_max) as usize;
        let slack = (self.cfg.deg_max - self.cfg.deg_min + 1) as u64 - len as u64;
        let lo = self.cfg.deg_min + self.rng.below(slack + 1) as i64;
        (lo, len)
    }

    /// A random complex: dimensions up to `max_dim` on a small window,
    /// differentials built through kernel bases.
    pub fn complex(&mut self) -> ChainComplex {
        let (lo, len) = self.window();
        let dims: Vec<usize> = (0..len)
            .map(|_| self.rng.below(self.cfg.max_dim as u64 + 1) as usize)
            .collect();
        self.complex_with(lo, &dims)
    }

    pub fn complex_with(&mut self, lo: i64, dims: &[usize]) -> ChainComplex {
        let mut dim_map = BTreeMap::new();
        for (k, &d) in dims.iter().enumerate() {
            if d > 0 {
                dim_map.insert(lo + k as i64, d);
            }
        }
        let dim_of = |m: &BTreeMap<i64, usize>, n: i64| m.get(&n).copied().unwrap_or(0);
        let mut diffs: BTreeMap<i64, Matrix> = BTreeMap::new();
        let degrees: Vec<i64> = dim_map.keys().copied().collect();
        for &n in &degrees {
            if dim_of(&dim_map, n - 1) == 0 {
                continue;
            }
            let prev = diffs
                .get(&(n - 1))
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(dim_of(&dim_map, n - 2), dim_of(&dim_map, n - 1)));
            let kernel = prev.kernel_basis(&self.ctx);
            let coeff = self.matrix(kernel.cols(), dim_of(&dim_map, n));
            diffs.insert(n, kernel.mul(&coeff, &self.ctx));
        }
        ChainComplex::new(self.ctx, dim_map, diffs).expect("kernel construction squares to zero")
    }

    /// A random chain map `x -> y`.
    pub fn map(&mut self, x: &ChainComplex, y: &ChainComplex) -> ChainMap {
        let basis = hom_basis(x, y).expect("shared context");
        let mut f = ChainMap::zero(x, y).expect("zero map");
        for b in &basis {
            let c = self.residue();
            if c != 0 {
                f = f.add(&b.scale(c)).expect("shared endpoints");
            }
        }
        f
    }

    /// A random invertible matrix, as a product of unit-triangular
    /// factors with nonzero diagonal.
    pub fn invertible(&mut self, d: usize) -> Matrix {
        let p = self.ctx.modulus();
        let mut lower = vec![0u64; d * d];
        let mut upper = vec![0u64; d * d];
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    lower[i * d + j] = 1 + self.rng.below(p - 1);
                    upper[i * d + j] = 1;
                } else if i > j {
                    lower[i * d + j] = self.rng.below(p);
                } else {
                    upper[i * d + j] = self.rng.below(p);
                }
            }
        }
        let l = Matrix::new(d, d, lower, &self.ctx).unwrap();
        let u = Matrix::new(d, d, upper, &self.ctx).unwrap();
        l.mul(&u, &self.ctx)
    }

    pub fn change_of_basis(&mut self, x: &ChainComplex) -> BTreeMap<i64, Matrix> {
        x.support()
            .map(|n| (n, self.invertible(x.dim(n))))
            .collect()
    }

    /// Twists a complex by a random change of basis; returns the twisted
    /// complex and the isomorphism onto it.
    pub fn twist(&mut self, x: &ChainComplex) -> (ChainComplex, ChainMap) {
        let u = self.change_of_basis(x);
        x.change_basis(&u)
            .expect("triangular factors are invertible")
    }

    /// A random acyclic complex near the given degree: a twisted sum of
    /// discs.
    pub fn acyclic(&mut self, lo: i64, count: usize) -> ChainComplex {
        if count == 0 {
            return ChainComplex::zero(self.ctx);
        }
        let hi_room = (self.cfg.deg_max - lo).max(1) as u64;
        let discs: Vec<ChainComplex> = (0..count)
            .map(|_| ChainComplex::disc(self.ctx, lo + 1 + self.rng.below(hi_room.min(3)) as i64))
            .collect();
        let refs: Vec<&ChainComplex> = discs.iter().collect();
        let sum = ChainComplex::direct_sum(&refs).unwrap().complex;
        self.twist(&sum).0
    }

    fn base_degree(&mut self, x: &ChainComplex) -> i64 {
        x.support_bounds().map_or(self.cfg.deg_min, |(a, _)| a)
    }

    /// A fibration onto `base`: projection from a twisted padded sum.
    pub fn fibration_onto(&mut self, base: &ChainComplex) -> ChainMap {
        let lo = self.base_degree(base);
        let count = 1 + self.rng.below(2) as usize;
        let pad = self.acyclic(lo, count);
        let sum = ChainComplex::direct_sum(&[base, &pad]).unwrap();
        let (_, iso) = self.twist(&sum.complex);
        sum.projections[0]
            .compose(&invert_iso(&iso))
            .expect("twisted projection")
    }

    /// A weak equivalence out of `x`: twisted pad inclusion.
    pub fn weq_from(&mut self, x: &ChainComplex) -> ChainMap {
        let lo = self.base_degree(x);
        let count = 1 + self.rng.below(2) as usize;
        let pad = self.acyclic(lo, count);
        let sum = ChainComplex::direct_sum(&[x, &pad]).unwrap();
        let (_, iso) = self.twist(&sum.complex);
        iso.compose(&sum.injections[0]).expect("twisted inclusion")
    }

    /// A random cospan; when `ensure_fibration` names a leg, that leg is
    /// a fibration by construction.
    pub fn cospan(&mut self, ensure_fibration: Option<Leg>) -> Cospan {
        let d = self.complex();
        let other = |g: &mut Gen, d: &ChainComplex| {
            let lo = g.base_degree(d);
            let (_, len) = g.window();
            let dims: Vec<usize> = (0..len)
                .map(|_| g.rng.below(g.cfg.max_dim as u64 + 1) as usize)
                .collect();
            let src = g.complex_with(lo, &dims);
            g.map(&src, d)
        };
        let f = match ensure_fibration {
            Some(Leg::Second) => self.fibration_onto(&d),
            _ => other(self, &d),
        };
        let g = match ensure_fibration {
            Some(Leg::First) => self.fibration_onto(&d),
            _ => other(self, &d),
        };
        Cospan::new(g, f).expect("shared target")
    }

    /// The strict-pullback square of a cospan.
    pub fn strict_square(&mut self, x: &Cospan) -> CommSquare {
        pullback_square(x).expect("strict pullback square")
    }

    /// A positive model-square instance: strict pullback over a cospan
    /// with a fibration leg, optionally padded through a weak
    /// equivalence (which preserves the verdict).
    pub fn positive_square(&mut self) -> CommSquare {
        let leg = if self.rng.chance(1, 2) {
            Leg::First
        } else {
            Leg::Second
        };
        let x = self.cospan(Some(leg));
        let s = self.strict_square(&x);
        if self.rng.chance(1, 2) {
            self.pad_corner_acyclic(&s)
        } else {
            s
        }
    }

    /// Replaces the corner by corner + acyclic, extending the corner maps
    /// by zero; the verdict is preserved.
    pub fn pad_corner_acyclic(&mut self, s: &CommSquare) -> CommSquare {
        let lo = self.base_degree(s.cospan().d());
        let pad = self.acyclic(lo, 1);
        let sum = ChainComplex::direct_sum(&[s.corner(), &pad]).unwrap();
        let u = s.u().compose(&sum.projections[0]).unwrap();
        let v = s.v().compose(&sum.projections[0]).unwrap();
        CommSquare::new(u, v, s.cospan().clone()).expect("padded square commutes")
    }

    /// A labeled negative: pads the corner with a sphere so its homology
    /// no longer matches the cocone homology of the cospan.
    pub fn spoil_corner(&mut self, s: &CommSquare) -> CommSquare {
        let lo = self.base_degree(s.cospan().d());
        let sphere = ChainComplex::sphere(self.ctx, lo + self.rng.below(3) as i64);
        let sum = ChainComplex::direct_sum(&[s.corner(), &sphere]).unwrap();
        let u = s.u().compose(&sum.projections[0]).unwrap();
        let v = s.v().compose(&sum.projections[0]).unwrap();
        CommSquare::new(u, v, s.cospan().clone()).expect("spoiled square commutes")
    }

    /// Pads every node of a square with a shared acyclic complex and
    /// returns the padded square together with the inclusion connectors
    /// (all weak equivalences, all faces commuting).
    pub fn pad_square(&mut self, s: &CommSquare) -> (CommSquare, SquareConnectors) {
        let lo = self.base_degree(s.cospan().d());
        let count = 1 + self.rng.below(2) as usize;
        let pad = self.acyclic(lo, count);
        let sum_a = ChainComplex::direct_sum(&[s.corner(), &pad]).unwrap();
        let sum_b = ChainComplex::direct_sum(&[s.cospan().b(), &pad]).unwrap();
        let sum_c = ChainComplex::direct_sum(&[s.cospan().c(), &pad]).unwrap();
        let sum_d = ChainComplex::direct_sum(&[s.cospan().d(), &pad]).unwrap();
        let edge = |m: &ChainMap, src: &DirectSum, tgt: &DirectSum| -> ChainMap {
            let main = tgt.injections[0]
                .compose(m)
                .unwrap()
                .compose(&src.projections[0])
                .unwrap();
            let pad = tgt.injections[1].compose(&src.projections[1]).unwrap();
            main.add(&pad).unwrap()
        };
        let u2 = edge(s.u(), &sum_a, &sum_b);
        let v2 = edge(s.v(), &sum_a, &sum_c);
        let f2 = edge(s.cospan().f(), &sum_b, &sum_d);
        let g2 = edge(s.cospan().g(), &sum_c, &sum_d);
        let x2 = Cospan::new(g2, f2).unwrap();
        let s2 = CommSquare::new(u2, v2, x2).expect("padded square commutes");
        let connectors = SquareConnectors {
            on_a: sum_a.injections[0].clone(),
            on_b: sum_b.injections[0].clone(),
            on_c: sum_c.injections[0].clone(),
            on_d: sum_d.injections[0].clone(),
        };
        (s2, connectors)
    }

    /// A cospan morphism from node-wise padding; always a levelwise
    /// injective weak equivalence and a Reedy cofibration for both
    /// labellings.
    pub fn padding_morphism(&mut self, x: &Cospan) -> CospanMorphism {
        let lo = self.base_degree(x.d());
        let count = 1 + self.rng.below(2) as usize;
        let pad = self.acyclic(lo, count);
        let sum_c = ChainComplex::direct_sum(&[x.c(), &pad]).unwrap();
        let sum_d = ChainComplex::direct_sum(&[x.d(), &pad]).unwrap();
        let sum_b = ChainComplex::direct_sum(&[x.b(), &pad]).unwrap();
        let leg = |m: &ChainMap, src: &DirectSum, tgt: &DirectSum| -> ChainMap {
            let main = tgt.injections[0]
                .compose(m)
                .unwrap()
                .compose(&src.projections[0])
                .unwrap();
            let pad = tgt.injections[1].compose(&src.projections[1]).unwrap();
            main.add(&pad).unwrap()
        };
        let g2 = leg(x.g(), &sum_c, &sum_d);
        let f2 = leg(x.f(), &sum_b, &sum_d);
        let tgt = Cospan::new(g2, f2).unwrap();
        CospanMorphism::new(
            x.clone(),
            tgt,
            sum_c.injections[0].clone(),
            sum_d.injections[0].clone(),
            sum_b.injections[0].clone(),
        )
        .expect("padding morphism commutes")
    }

    /// A quotient cospan morphism: projects padded nodes back down, so
    /// components are surjective but typically not injective.
    pub fn projection_morphism(&mut self, x: &Cospan) -> CospanMorphism {
        let m = self.padding_morphism(x);
        // reverse it: from the padded cospan onto the original
        let tgt = m.tgt().clone();
        let retract = |incl: &ChainMap| retraction_of(incl);
        CospanMorphism::new(
            tgt.clone(),
            x.clone(),
            retract(m.phi_c()),
            retract(m.phi_d()),
            retract(m.phi_b()),
        )
        .expect("retraction morphism commutes")
    }

    /// A different fibrant replacement of the same cospan: the target of
    /// `r` twisted by a degreewise change of basis.
    pub fn twist_replacement(&mut self, r: &Replacement) -> Replacement {
        let tgt = r.tgt();
        let (_, iso_c) = self.twist(tgt.c());
        let (_, iso_d) = self.twist(tgt.d());
        let (_, iso_b) = self.twist(tgt.b());
        let g2 = iso_d
            .compose(tgt.g())
            .unwrap()
            .compose(&invert_iso(&iso_c))
            .unwrap();
        let f2 = iso_d
            .compose(tgt.f())
            .unwrap()
            .compose(&invert_iso(&iso_b))
            .unwrap();
        let twisted = Cospan::new(g2, f2).unwrap();
        let iso = CospanMorphism::new(tgt.clone(), twisted, iso_c, iso_d, iso_b)
            .expect("twist is a cospan isomorphism");
        let map = iso.compose(r.map()).unwrap();
        Replacement::new(map, r.sigma(), r.mode()).expect("twisted replacement is valid")
    }

    pub fn sigma(&mut self) -> SigmaTag {
        SigmaTag::ALL[self.rng.below(3) as usize]
    }
}

/// Inverts a degreewise isomorphism.
pub fn invert_iso(iso: &ChainMap) -> ChainMap {
    let ctx = *iso.ctx();
    let mut maps = BTreeMap::new();
    for n in iso.tgt().support() {
        maps.insert(n, iso.at(n).inverse(&ctx).expect("isomorphism component"));
    }
    ChainMap::new(iso.tgt().clone(), iso.src().clone(), maps).expect("inverse chain map")
}

/// A retraction of a split degreewise injection (e.g. a padded
/// inclusion): solves `r . incl = id` together with the chain-map
/// conditions.
pub fn retraction_of(incl: &ChainMap) -> ChainMap {
    let ctx = *incl.ctx();
    let zero = ChainComplex::zero(ctx);
    let p = ChainMap::zero(incl.src(), &zero).unwrap();
    let v = ChainMap::zero(incl.tgt(), &zero).unwrap();
    hopull_core::chain::lift(incl, &p, &ChainMap::identity(incl.src()), &v)
        .expect("split inclusions admit retractions")
}

/// Generates a random cospan from a fresh stream seeded by the config;
/// deterministic in `(cfg.seed, ensure_fibration)`.
pub fn gen_cospan(cfg: &GenConfig, ensure_fibration: Option<Leg>) -> Result<Cospan, ConfigError> {
    let mut g = Gen::new(cfg, SplitMix64::new(cfg.seed))?;
    Ok(g.cospan(ensure_fibration))
}
