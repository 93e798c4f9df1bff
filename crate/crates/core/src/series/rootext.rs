use alloc::vec;
use alloc::vec::Vec;

use super::laurent::{TruncLaurent, EXACT};

/// `c_0 + c_1 iota + ... + c_{q-2} iota^{q-2}` with `iota^{q-1} = -theta`,
/// a formal `(q-1)`-th root of `-theta` over truncated Laurent series.
///
/// For `q = 2` there is a single coordinate and `iota` is `-theta` itself.
#[derive(Clone, Debug, PartialEq)]
pub struct RootExt {
    coords: Vec<TruncLaurent>,
}

impl RootExt {
    /// The base element `x`, for `q = x.field().q()`.
    pub fn from_base(x: TruncLaurent) -> Self {
        let n = x.field().q() as usize - 1;
        let z = TruncLaurent::zero(x.field(), x.ram(), EXACT);
        let mut coords = vec![z; n];
        coords[0] = x;
        RootExt { coords }
    }

    pub fn from_coords(coords: Vec<TruncLaurent>) -> Self {
        assert_eq!(coords.len(), coords[0].field().q() as usize - 1);
        RootExt { coords }
    }

    /// The adjoined root `iota`.
    pub fn iota(like: &TruncLaurent) -> Self {
        let f = like.field();
        let n = f.q() as usize - 1;
        if n == 1 {
            return Self::from_base(TruncLaurent::theta(f).neg().ramify(like.ram()));
        }
        let z = TruncLaurent::zero(f, like.ram(), EXACT);
        let mut coords = vec![z; n];
        coords[1] = TruncLaurent::one(f).ramify(like.ram());
        RootExt { coords }
    }

    pub fn coords(&self) -> &[TruncLaurent] {
        &self.coords
    }

    pub fn add(&self, o: &RootExt) -> RootExt {
        RootExt {
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &RootExt) -> RootExt {
        RootExt {
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &TruncLaurent) -> RootExt {
        RootExt {
            coords: self.coords.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, o: &RootExt) -> RootExt {
        let n = self.coords.len();
        let f = self.coords[0].field();
        let m = self.coords[0].ram();
        let minus_theta = TruncLaurent::theta(f).neg().ramify(m);
        let mut out = vec![TruncLaurent::zero(f, m, EXACT); n];
        for (i, a) in self.coords.iter().enumerate() {
            for (j, b) in o.coords.iter().enumerate() {
                let p = a.mul(b);
                let k = i + j;
                if k < n {
                    out[k] = out[k].add(&p);
                } else {
                    out[k - n] = out[k - n].add(&p.mul(&minus_theta));
                }
            }
        }
        RootExt { coords: out }
    }

    pub fn pow(&self, mut e: u64) -> RootExt {
        let f = self.coords[0].field();
        let mut r = RootExt::from_base(TruncLaurent::one(f).ramify(self.coords[0].ram()));
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// The base coordinate when all `iota`-coordinates vanish to precision.
    pub fn as_base(&self) -> Option<&TruncLaurent> {
        self.coords[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| &self.coords[0])
    }
}
