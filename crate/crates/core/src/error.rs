use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{k} exceeds the supported size")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("modulus has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("modulus is not monic")]
    NonMonicModulus,
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("element does not belong to this field")]
    ForeignElement,
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero element has no multiplicative order")]
    ZeroElement,
    #[error("refusing to enumerate a field of order {q} (guard is {guard})")]
    TooLargeToEnumerate { q: u64, guard: u64 },
    #[error("quadratic character is undefined in characteristic 2")]
    EvenCharacteristic,
    #[error("cubic character needs q = 1 mod 3, got q = {0}")]
    BadFieldForCubic(u64),
    #[error("cubic count needs p^k = 1 mod 3, got p = {p}, k = {k}")]
    BadExtensionForCubic { p: u64, k: u64 },
    #[error("the zero polynomial has no index")]
    ZeroPolynomial,
    #[error("a constant polynomial has no index")]
    ConstantPolynomial,
    #[error("exponent {exponent} is not below q = {q}")]
    DegreeTooLarge { exponent: u64, q: u64 },
    #[error("index form is not minimal: m = {given}, minimal m = {minimal}")]
    NonMinimalIndex { given: u64, minimal: u64 },
    #[error("gcd(n, (q-1)/{r}) != 1 for n = {n}")]
    GcdViolation { n: u64, r: u64 },
    #[error("unsupported index r = {0}; only 2 and 3 are handled")]
    UnsupportedIndex(u64),
    #[error("r = {r} does not divide q - 1 = {q_minus_1}")]
    IndexNotDividing { r: u64, q_minus_1: u64 },
    #[error("q = {0} is even")]
    EvenQ(u64),
    #[error("prime {0} is even")]
    EvenPrime(u64),
    #[error("prime {0} is too small for this identity")]
    SmallPrime(u64),
    #[error("kappa is undefined for p = {0}")]
    UnsupportedPrime(u64),
    #[error("curve count {count} disagrees with p + 1 + kappa for p = {p}, kappa = {kappa}")]
    CrossCheckFailed { p: u64, kappa: i64, count: u64 },
    #[error("closed-form numerator is not divisible by 9")]
    DivisibilityViolation,
    #[error("n must be positive")]
    ZeroExponent,
}

pub type Result<T> = std::result::Result<T, Error>;
