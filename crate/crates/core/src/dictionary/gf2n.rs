/// Arithmetic in GF(2^n) using a polynomial basis, for `2 <= n <= 9`.
#[derive(Debug, Clone, Copy)]
pub struct Gf2n {
    n: u32,
    modulus: u32,
}

// Irreducible (in fact primitive) polynomials, bit i = coefficient of x^i.
const MODULI: [(u32, u32); 8] = [
    (2, 0b111),
    (3, 0b1011),
    (4, 0b1_0011),
    (5, 0b10_0101),
    (6, 0b100_0011),
    (7, 0b1000_1001),
    (8, 0b1_0001_1101),
    (9, 0b10_0001_0001),
];

impl Gf2n {
    pub fn new(n: u32) -> Option<Self> {
        MODULI
            .iter()
            .find(|(d, _)| *d == n)
            .map(|&(n, modulus)| Gf2n { n, modulus })
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        1 << self.n
    }

    pub fn mul(&self, mut a: u32, mut b: u32) -> u32 {
        let mut acc = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.n & 1 == 1 {
                a ^= self.modulus;
            }
        }
        acc
    }

    /// Absolute trace `z + z^2 + z^4 + ... + z^(2^(n-1))`, which lies in GF(2).
    pub fn trace(&self, z: u32) -> u32 {
        let mut t = 0;
        let mut p = z;
        for _ in 0..self.n {
            t ^= p;
            p = self.mul(p, p);
        }
        debug_assert!(t <= 1);
        t
    }
}
