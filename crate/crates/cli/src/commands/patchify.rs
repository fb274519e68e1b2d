use lfd_degrade::mix64;
use lfd_pipeline::{patchify, plan_augmentations, write_patch_store, AugMode, DegradationSampler};

use crate::args::{AugChoice, PatchifyArgs};
use crate::common::{load_scenes, scene_seed};
use crate::errors::Result;

pub fn run(args: &PatchifyArgs, seed: u64) -> Result<()> {
    let mode = match args.aug {
        AugChoice::SampleOne => AugMode::SampleOne,
        AugChoice::MaterializeAll => AugMode::MaterializeAll,
    };
    let sampler = DegradationSampler::new(seed);
    let scenes = load_scenes(&args.input)?;
    for (i, (name, hr)) in scenes.iter().enumerate() {
        // One sampled degradation per scene; windows inside the scene draw
        // their own noise streams from the scene seed.
        let d = sampler.draw(i as u64);
        let s = scene_seed(seed, name);
        let pairs = patchify(name, hr, &d, s)?;
        let plan = plan_augmentations(pairs.len(), mode, mix64(s));
        let stored = write_patch_store(&args.out.join(name), &pairs, &plan)?;
        println!("patchified {name}: {} windows, {} stored", pairs.len(), stored.len());
    }
    Ok(())
}
