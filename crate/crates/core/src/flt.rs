//! Float helpers that work without `std`.

pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

pub(crate) fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

pub(crate) fn copysign(x: f64, y: f64) -> f64 {
    libm::copysign(x, y)
}

pub(crate) fn round(x: f64) -> f64 {
    libm::round(x)
}
