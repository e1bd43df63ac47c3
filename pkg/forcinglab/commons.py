import logging
import os


LOG_DIR = os.getenv("FORCINGLAB_LOG_DIR", os.path.join(os.getcwd(), "lab_logs"))

# Exhaustive scans walk all 2^|P| subsets of a poset; the cap bounds |P|.
EXHAUSTION_CAP = int(os.getenv("FORCINGLAB_EXHAUSTION_CAP", "12"))
NAME_CAP = int(os.getenv("FORCINGLAB_NAME_CAP", "5000"))
DEFAULT_SEED = int(os.getenv("FORCINGLAB_SEED", "0"))

# Exhaustive corpora stop here; larger sizes are sampled.
EXHAUSTIVE_CORPUS_SIZE = 4


def setup_logging(verbose: bool = False):
    level = logging.DEBUG if verbose else logging.INFO
    os.makedirs(LOG_DIR, exist_ok=True)
    log_file = os.path.join(LOG_DIR, "forcinglab.log")
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="[%X]",
        handlers=[logging.FileHandler(log_file, encoding="utf-8")],
        force=True,
    )
