import logging
import tempfile
import unittest
from pathlib import Path
from unittest.mock import MagicMock, patch

from toric_euler.logging_helper import (
    PACKAGE_LOGGER_NAME,
    add_file_logger,
    close_file_handlers,
    configure_package_logger,
    shutdown_logger,
)


class TestLoggingHelper(unittest.TestCase):
    def setUp(self):
        self.logger = logging.getLogger("test_logger")
        self.logger.handlers = []  # Clear existing handlers

    @patch("logging.FileHandler")
    def test_add_file_logger(self, mock_file_handler):
        mock_file_handler_instance = MagicMock()
        mock_file_handler.return_value = mock_file_handler_instance

        output_path = Path("/tmp/fake/path/to/logfile.log")
        logger = add_file_logger(self.logger, output_path)

        self.assertEqual(len(logger.handlers), 1)
        self.assertEqual(logger.handlers[0], mock_file_handler_instance)
        mock_file_handler.assert_called_once_with(output_path, encoding="utf-8", mode="w")

    def test_close_file_handlers(self):
        stream_handler = logging.StreamHandler()
        self.logger.addHandler(stream_handler)
        with tempfile.TemporaryDirectory() as tmp:
            add_file_logger(self.logger, Path(tmp) / "run.log")
            self.assertEqual(len(self.logger.handlers), 2)
            close_file_handlers(self.logger)
        self.assertEqual(self.logger.handlers, [stream_handler])


class TestConfigurePackageLogger(unittest.TestCase):
    def tearDown(self):
        close_file_handlers(logging.getLogger(PACKAGE_LOGGER_NAME))

    def test_levels(self):
        self.assertEqual(configure_package_logger(debug=True).level, logging.DEBUG)
        self.assertEqual(configure_package_logger().level, logging.INFO)

    def test_log_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "toric.log"
            package_logger = configure_package_logger(log_file=path)
            self.assertEqual(package_logger.name, PACKAGE_LOGGER_NAME)
            self.assertTrue(any(isinstance(h, logging.FileHandler) for h in package_logger.handlers))
            close_file_handlers(package_logger)
            self.assertTrue(path.exists())
            self.assertFalse(any(isinstance(h, logging.FileHandler) for h in package_logger.handlers))

    @patch("logging.shutdown")
    def test_shutdown_logger(self, mock_shutdown):
        with tempfile.TemporaryDirectory() as tmp:
            package_logger = configure_package_logger(log_file=Path(tmp) / "toric.log")
            shutdown_logger(package_logger)
        self.assertFalse(any(isinstance(h, logging.FileHandler) for h in package_logger.handlers))
        mock_shutdown.assert_called_once()


if __name__ == "__main__":
    unittest.main()
