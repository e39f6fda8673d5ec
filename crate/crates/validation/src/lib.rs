//! Reference values computed without the library's own classification
//! code, for use by the acceptance suite.

use kodaira::local::TypeFamily;

/// `#E(F_p)` for `y² = x³ + a·x + b`, by counting.
pub fn count_points(a: u64, b: u64, p: u64) -> u64 {
    let mut squares = vec![0u64; p as usize];
    for y in 0..p {
        squares[(y * y % p) as usize] += 1;
    }
    1 + (0..p)
        .map(|x| squares[((x * x % p * x + a * x + b) % p) as usize])
        .sum::<u64>()
}

/// Whether `y² = x³ + a·x + b` is supersingular over `F_p` (p ≥ 5), i.e. has `p + 1` points.
pub fn is_supersingular(a: u64, b: u64, p: u64) -> bool {
    count_points(a, b, p) == p + 1
}

/// Degree of the smallest tame extension giving semistable reduction.
pub fn semistability_degree(f: TypeFamily) -> u64 {
    use TypeFamily::*;
    match f {
        I0 | In => 1,
        I0Star | InStar => 2,
        IV | IVStar => 3,
        III | IIIStar => 4,
        II | IIStar => 6,
    }
}
