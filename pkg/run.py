from pathlib import Path

from dotenv import load_dotenv

# Load environment variables from .env file (explicit path)
env_path = Path(__file__).resolve().parent / ".env"
load_dotenv(env_path)

from forcinglab.cli import main  # noqa: E402  (caps are read from the environment at import)


if __name__ == "__main__":
    main()
