//! Chart geometry of the base curve, the torsor of connections and the
//! compactified Poisson surface.

pub mod atlas;
pub mod classify;
pub mod torsor;

pub use atlas::{BaseAtlas, LineBundleCocycle};
pub use classify::{classify_ruled_poisson, BundleDescription, PoissonDivisor, SurfaceCase, SurfaceClass};
pub use torsor::{
    build_torsor, compactify, curvature_form, global_section, torsor_class, ChartRef, Fiber,
    FiberFunction, GlobalSection, PoissonSurfaceAtlas, TorsorAtlas,
};
