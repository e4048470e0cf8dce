//! Independent construction of the generators from bosonic mode operators on a
//! truncated two-mode Fock space, projected onto a fixed particle number.

/// Real dense matrix, row-major.
#[derive(Clone, Debug)]
pub struct Dense {
    pub n: usize,
    pub data: Vec<f64>,
}

impl Dense {
    pub fn zeros(n: usize) -> Self {
        Dense {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        let n = self.n;
        let mut out = Dense::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * o.get(k, j);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Dense {
        let mut out = Dense::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }
}

/// Mode operators on `n_a <= cut_a`, `n_b <= cut_b`, indexed `n_a * (cut_b + 1) + n_b`.
pub struct TwoModeSpace {
    pub cut_a: usize,
    pub cut_b: usize,
    pub a: Dense,
    pub b: Dense,
}

impl TwoModeSpace {
    pub fn new(cut_a: usize, cut_b: usize) -> Self {
        let dim = (cut_a + 1) * (cut_b + 1);
        let idx = |na: usize, nb: usize| na * (cut_b + 1) + nb;
        let mut a = Dense::zeros(dim);
        let mut b = Dense::zeros(dim);
        for na in 0..=cut_a {
            for nb in 0..=cut_b {
                if na > 0 {
                    a.set(idx(na - 1, nb), idx(na, nb), (na as f64).sqrt());
                }
                if nb > 0 {
                    b.set(idx(na, nb - 1), idx(na, nb), (nb as f64).sqrt());
                }
            }
        }
        TwoModeSpace { cut_a, cut_b, a, b }
    }

    fn index(&self, na: usize, nb: usize) -> usize {
        na * (self.cut_b + 1) + nb
    }

    /// Indices of the `n_a + 2 n_b = N` sector ordered by increasing `n_a`.
    pub fn sector(&self, n: usize) -> Vec<usize> {
        (0..=n / 2)
            .rev()
            .map(|nb| self.index(n - 2 * nb, nb))
            .collect()
    }
}

/// Sector projections of `K_+`, `K_-`, `K_z`: `a^dag a^dag b / sqrt(N)`, its adjoint,
/// and `(a^dag a - 2 b^dag b) / 4`.
pub struct FockGenerators {
    pub kplus: Dense,
    pub kminus: Dense,
    pub kz: Dense,
}

pub fn fock_generators(n: usize) -> FockGenerators {
    // Two spare quanta in mode a so that a^dag a^dag never hits the cutoff inside the sector.
    let space = TwoModeSpace::new(n + 2, n / 2 + 1);
    let ad = space.a.transpose();
    let bd = space.b.transpose();
    let scale = 1.0 / (n as f64).sqrt();
    let kplus_full = ad.mul(&ad).mul(&space.b);
    let kminus_full = bd.mul(&space.a).mul(&space.a);
    let na = ad.mul(&space.a);
    let nb = bd.mul(&space.b);
    let sector = space.sector(n);
    let d = sector.len();
    let project = |m: &Dense, s: f64| {
        let mut out = Dense::zeros(d);
        for (i, &gi) in sector.iter().enumerate() {
            for (j, &gj) in sector.iter().enumerate() {
                out.set(i, j, s * m.get(gi, gj));
            }
        }
        out
    };
    let mut kz = project(&na, 0.25);
    let nb_p = project(&nb, 0.5);
    for i in 0..d * d {
        kz.data[i] -= nb_p.data[i];
    }
    FockGenerators {
        kplus: project(&kplus_full, scale),
        kminus: project(&kminus_full, scale),
        kz,
    }
}
