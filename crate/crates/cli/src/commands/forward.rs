use lfd_danet::{network_forward, NetConfig};
use lfd_degrade::Degradation;
use lfd_pipeline::save_scene;

use crate::args::ForwardArgs;
use crate::common::{load_scenes, resolve_params};
use crate::errors::Result;

pub fn run(args: &ForwardArgs, seed: u64, cfg: &NetConfig) -> Result<()> {
    let d = Degradation::new(args.sigma, args.noise, args.alpha)?;
    let params = resolve_params(&args.params, seed, cfg)?;
    let scenes = load_scenes(&args.input)?;
    for (name, lr) in &scenes {
        let sr = network_forward(lr, &d, &params, cfg)?;
        save_scene(&sr, name, &args.out.join(name), None)?;
        println!("reconstructed {name}");
    }
    Ok(())
}
