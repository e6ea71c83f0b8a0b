pub mod boson;
pub mod cli;
pub mod lie_bialgebra;
pub mod nc_hopf;
pub mod report;
pub mod scalar;
pub mod schrodinger;
pub mod series;
