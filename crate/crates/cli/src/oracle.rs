//! Brute-force reference values kept independent of the core enumeration code.

/// `6·H(n)` by direct enumeration of reduced forms `(a, b, c)` with
/// `b² − 4ac = −n`, forms equivalent to `a(x² + y²)` and `a(x² + xy + y²)`
/// counted with weight 1/2 and 1/3. Returns 0 when `−n` is not a discriminant.
pub fn six_hurwitz(n: u64) -> u64 {
    let n = n as i64;
    if n <= 0 || !matches!((-n).rem_euclid(4), 0 | 1) {
        return 0;
    }
    let mut total = 0u64;
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in -a..=a {
            let num = b * b + n;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && (-b == a || a == c)) {
                continue;
            }
            total += if b == 0 && a == c {
                3
            } else if b == a && a == c {
                2
            } else {
                6
            };
        }
        a += 1;
    }
    total
}
