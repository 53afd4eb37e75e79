//! Permutations of the four vertex labels of a tetrahedron.

use std::fmt;
use std::str::FromStr;

/// A bijection on `{0, 1, 2, 3}`, stored as its image list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Builds a permutation from its images, returning `None` if the images
    /// do not form a bijection.
    pub fn new(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Perm4(images))
    }

    /// The transposition swapping `a` and `b` (identity when `a == b`).
    pub fn transposition(a: usize, b: usize) -> Perm4 {
        let mut img = [0, 1, 2, 3];
        img.swap(a, b);
        Perm4(img)
    }

    /// All 24 permutations in lexicographic order of their image lists.
    pub fn all() -> impl Iterator<Item = Perm4> {
        (0..24).map(|i| ALL_PERMS[i])
    }

    #[inline]
    pub fn apply(self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    /// `self.compose(other)` maps `i` to `self(other(i))`.
    #[inline]
    pub fn compose(self, other: Perm4) -> Perm4 {
        Perm4([
            self.0[other.0[0] as usize],
            self.0[other.0[1] as usize],
            self.0[other.0[2] as usize],
            self.0[other.0[3] as usize],
        ])
    }

    pub fn inverse(self) -> Perm4 {
        let mut inv = [0u8; 4];
        for (i, &img) in self.0.iter().enumerate() {
            inv[img as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(self) -> i32 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_odd(self) -> bool {
        self.sign() < 0
    }
}

const ALL_PERMS: [Perm4; 24] = {
    let mut out = [Perm4([0, 1, 2, 3]); 24];
    let mut k = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                if a != b && b != c && a != c {
                    let d = 6 - a - b - c;
                    out[k] = Perm4([a as u8, b as u8, c as u8, d as u8]);
                    k += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm4({self})")
    }
}

impl FromStr for Perm4 {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        if bytes.len() != 4 {
            return Err(());
        }
        let mut img = [0u8; 4];
        for (slot, &b) in img.iter_mut().zip(bytes) {
            if !(b'0'..=b'3').contains(&b) {
                return Err(());
            }
            *slot = b - b'0';
        }
        Perm4::new(img).ok_or(())
    }
}
