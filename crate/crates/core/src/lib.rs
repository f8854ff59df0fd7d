pub mod exactlin;
pub mod rootsys;
pub mod lie;
pub mod chevalley;
pub mod realform;
pub mod orbits;
pub mod coiso;
pub mod criteria;
