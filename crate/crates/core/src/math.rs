//! Float math routed through `std` intrinsics or `libm`, depending on build.

#![allow(dead_code)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("lodus-core requires either the `std` feature or the `libm` feature");

macro_rules! forward {
    ($($name:ident),* $(,)?) => {
        $(
            #[inline]
            pub(crate) fn $name(x: f64) -> f64 {
                #[cfg(feature = "std")]
                {
                    x.$name()
                }
                #[cfg(all(not(feature = "std"), feature = "libm"))]
                {
                    libm::$name(x)
                }
            }
        )*
    };
}

forward!(sqrt, sin, cos, tan, atan, exp, floor, ceil, round);

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.ln()
    }
    #[cfg(all(not(feature = "std"), feature = "libm"))]
    {
        libm::log(x)
    }
}

#[inline]
pub(crate) fn atan2(y: f64, x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        y.atan2(x)
    }
    #[cfg(all(not(feature = "std"), feature = "libm"))]
    {
        libm::atan2(y, x)
    }
}

#[inline]
pub(crate) fn powf(x: f64, e: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.powf(e)
    }
    #[cfg(all(not(feature = "std"), feature = "libm"))]
    {
        libm::pow(x, e)
    }
}

#[inline]
pub(crate) fn hypot(x: f64, y: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.hypot(y)
    }
    #[cfg(all(not(feature = "std"), feature = "libm"))]
    {
        libm::hypot(x, y)
    }
}
